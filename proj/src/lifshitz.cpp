#include "lifshitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "quadrature.hpp"

namespace caspol {

namespace {

// e^{-y} weight makes the tail beyond 40 units negligible (< 1e-17 relative)
constexpr double kYCut = 40.0;
constexpr double kZetaCutT0 = 60.0;

void check_quad(const QuadOutcome& q, const char* what) {
  if (!q.converged) {
    std::ostringstream msg;
    msg << what << " quadrature failed: best estimate " << q.value
        << ", achieved absolute error " << q.abs_error << " over "
        << q.intervals << " intervals";
    fail(ErrorCode::NoConvergence, msg.str());
  }
}

struct TermOutcome {
  double value = 0.0;
  double quad_abs_err = 0.0;
};

// Integrand braces of the dimensionless Lifshitz formula,
// 2 y^2 R_TM - zeta^2 (R_TM + R_TE), with the force kind weighted by y.
TermOutcome eval_term(const Surface& s, const AtomModel& atom,
                      const Geometry& g, long l, Kind kind, double quad_rel_tol,
                      const Constants& k) {
  const double t = tau(g, k);
  TermOutcome out;

  if (l == 0) {
    auto f = [&](double y) {
      const double w = (kind == Kind::Force) ? y : 1.0;
      return w * std::exp(-y) * 2.0 * y * y * r_tm_zero_freq(s, y, t, k);
    };
    const auto q = integrate_adaptive(f, 0.0, kYCut, quad_rel_tol);
    check_quad(q, "zero-frequency term");
    const double alpha0 = polarizability_at(atom, 0.0);
    out.value = 0.5 * alpha0 * q.value;
    out.quad_abs_err = 0.5 * alpha0 * q.abs_error;
    return out;
  }

  const double zeta = matsubara_zeta(g, l, k);
  const double xi_ev = zeta * omega_c_ev(g, k);
  const double eps = s.plate.at(xi_ev);
  const double alpha_l = polarizability_at(atom, xi_ev);
  const bool coated = s.coated();

  auto f = [&](double tt) {
    const double y = zeta + tt;
    const TensorPair tp =
        coated ? tensor_at_nonzero_matsubara(s.sheet(), zeta, y, k)
               : TensorPair{};
    const double rtm = r_tm(eps, zeta, y, tp);
    const double rte = r_te(eps, zeta, y, tp);
    const double bracket = 2.0 * y * y * rtm - zeta * zeta * (rtm + rte);
    const double w = (kind == Kind::Force) ? y : 1.0;
    return std::exp(-tt) * w * bracket;
  };
  // open the interval just above y = zeta_l; the e^{-zeta} factor is pulled
  // out so the integral stays O(1) for large l
  const auto q = integrate_adaptive(f, zeta * 1e-12, kYCut, quad_rel_tol);
  check_quad(q, "Matsubara term");
  const double damp = std::exp(-zeta);
  out.value = alpha_l * damp * q.value;
  out.quad_abs_err = alpha_l * damp * q.abs_error;
  return out;
}

struct SumOutcome {
  double sum = 0.0;
  double est_rel_error = 0.0;
  long terms_used = 0;
};

SumOutcome sum_matsubara(const Surface& s, const AtomModel& atom,
                         const Geometry& g, Kind kind,
                         const ComputeSettings& settings, const Constants& k) {
  settings.validate();
  if (!(g.temperature_K > 0.0))
    fail(ErrorCode::Domain,
         "Matsubara summation needs T > 0; use energy_zero_temperature");

  double sum = 0.0, quad_abs = 0.0;
  double prev_abs = 0.0;  // |term_{l-1}|
  double last_abs = 0.0;  // |term_l|
  double max_abs = 0.0;
  int consecutive_small = 0;
  bool converged = false;
  long terms = 0;

  for (long l = 0; l < settings.max_matsubara_terms; ++l) {
    const TermOutcome t = eval_term(s, atom, g, l, kind, settings.quad_rel_tol, k);
    sum += t.value;
    quad_abs += t.quad_abs_err;
    const double abs_v = std::fabs(t.value);
    max_abs = std::max(max_abs, abs_v);
    terms = l + 1;

    if (l > 0) {
      // truncation: three consecutive terms each below tolerance, with
      // monotone decay established
      const bool small = abs_v <= settings.sum_rel_tol * std::fabs(sum);
      const bool decaying = abs_v <= last_abs;
      consecutive_small = (small && decaying) ? consecutive_small + 1 : 0;
    }
    prev_abs = last_abs;
    last_abs = abs_v;

    if (consecutive_small >= 3) {
      converged = true;
      break;
    }
    if (l >= 4 && max_abs == 0.0) return {0.0, 0.0, terms};  // vacuum plate
  }

  if (!converged) {
    std::ostringstream msg;
    msg << "Matsubara sum did not converge after " << terms
        << " terms (last relative contribution "
        << (std::fabs(sum) > 0 ? last_abs / std::fabs(sum) : 0.0) << ")";
    fail(ErrorCode::NoConvergence, msg.str());
  }

  // geometric tail bound from the decay ratio of the last two terms
  double tail = 0.0;
  if (last_abs > 0.0 && prev_abs > 0.0) {
    const double r = std::clamp(last_abs / prev_abs, 0.0, 0.97);
    tail = last_abs * r / (1.0 - r);
  }
  SumOutcome out;
  out.sum = sum;
  out.terms_used = terms;
  out.est_rel_error = (quad_abs + tail) / std::max(std::fabs(sum), 1e-300);
  return out;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

void ComputeSettings::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in_unit(quad_rel_tol) || !in_unit(sum_rel_tol) || !in_unit(zero_t_freq_tol))
    fail(ErrorCode::InvalidArgument, "tolerances must lie in (0, 1)");
  if (max_matsubara_terms < 10)
    fail(ErrorCode::InvalidArgument, "max_matsubara_terms must be >= 10");
  if (threads < 0)
    fail(ErrorCode::InvalidArgument, "threads must be >= 0");
}

double matsubara_term(const Surface& s, const AtomModel& atom,
                      const Geometry& g, long l, Kind kind,
                      const ComputeSettings& settings, const Constants& k) {
  settings.validate();
  if (l < 0) fail(ErrorCode::InvalidArgument, "Matsubara index must be >= 0");
  return eval_term(s, atom, g, l, kind, settings.quad_rel_tol, k).value;
}

CPResult free_energy(const Surface& s, const AtomModel& atom,
                     const Geometry& g, const ComputeSettings& settings,
                     const Constants& k) {
  const SumOutcome o = sum_matsubara(s, atom, g, Kind::FreeEnergy, settings, k);
  const double a = g.separation_nm;
  const double pref =
      -k.boltzmann * g.temperature_K / (8.0 * a * a * a) * k.polarizability_au;
  CPResult r;
  r.value_si = pref * o.sum * joule_per_ev;
  r.dimensionless_value = -o.sum / atom.static_polarizability_au;
  r.terms_used = o.terms_used;
  r.est_error = o.est_rel_error;
  return r;
}

CPResult force(const Surface& s, const AtomModel& atom, const Geometry& g,
               const ComputeSettings& settings, const Constants& k) {
  const SumOutcome o = sum_matsubara(s, atom, g, Kind::Force, settings, k);
  const double a = g.separation_nm;
  const double pref = -k.boltzmann * g.temperature_K / (8.0 * a * a * a * a) *
                      k.polarizability_au;
  CPResult r;
  r.value_si = pref * o.sum * newton_per_ev_nm;
  r.dimensionless_value = -o.sum / atom.static_polarizability_au;
  r.terms_used = o.terms_used;
  r.est_error = o.est_rel_error;
  return r;
}

CPResult energy_zero_temperature(const Surface& s, const AtomModel& atom,
                                 const Geometry& g,
                                 const ComputeSettings& settings,
                                 const Constants& k) {
  settings.validate();
  const double wc = omega_c_ev(g, k);
  const bool coated = s.coated();
  const double inner_tol = std::min(settings.quad_rel_tol, settings.zero_t_freq_tol * 0.1);
  long evals = 0;

  auto outer = [&](double zeta) {
    ++evals;
    const double eps = s.plate.at(std::max(zeta, 1e-300) * wc);
    auto inner = [&](double tt) {
      const double y = zeta + tt;
      const TensorPair tp =
          coated ? zero_temperature_tensor(s.sheet(), zeta, y, k) : TensorPair{};
      const double rtm = r_tm(eps, zeta, y, tp);
      const double rte = r_te(eps, zeta, y, tp);
      return std::exp(-tt) * (2.0 * y * y * rtm - zeta * zeta * (rtm + rte));
    };
    const auto q = integrate_adaptive(inner, zeta * 1e-12, kYCut, inner_tol);
    check_quad(q, "zero-temperature inner");
    return polarizability_at(atom, zeta * wc) * std::exp(-zeta) * q.value;
  };

  const auto q = integrate_adaptive(outer, 0.0, kZetaCutT0,
                                    settings.zero_t_freq_tol, 0.0, 1024);
  check_quad(q, "zero-temperature frequency integral");

  const double a = g.separation_nm;
  const double pref = -k.hbar_c / (32.0 * std::numbers::pi * a * a * a * a) *
                      k.polarizability_au;
  CPResult r;
  r.value_si = pref * q.value * joule_per_ev;
  r.dimensionless_value = -q.value / atom.static_polarizability_au;
  r.terms_used = evals;
  r.est_error = q.abs_error / std::max(std::fabs(q.value), 1e-300) + inner_tol;
  return r;
}

std::vector<RatioPoint> ratio_sweep(const Surface& coated, const Surface& bare,
                                    const AtomModel& atom,
                                    const std::vector<double>& separations_nm,
                                    double temperature_K, RatioKind kind,
                                    const ComputeSettings& settings,
                                    const Constants& k) {
  settings.validate();
  if (separations_nm.empty())
    fail(ErrorCode::InvalidArgument, "ratio_sweep: empty separation list");

  std::vector<RatioPoint> points(separations_nm.size());
  auto compute_point = [&](std::size_t i) {
    RatioPoint& p = points[i];
    p.separation_nm = separations_nm[i];
    try {
      const Geometry g(separations_nm[i], temperature_K);
      auto eval = [&](const Surface& s) {
        switch (kind) {
          case RatioKind::FreeEnergy:
            return free_energy(s, atom, g, settings, k);
          case RatioKind::Force:
            return force(s, atom, g, settings, k);
          case RatioKind::EnergyT0:
            return energy_zero_temperature(s, atom, g, settings, k);
        }
        fail(ErrorCode::InvalidArgument, "unknown ratio kind");
      };
      const CPResult num = eval(coated);
      const CPResult den = eval(bare);
      if (den.value_si == 0.0)
        fail(ErrorCode::Domain, "ratio undefined: bare value is zero");
      p.ratio = num.value_si / den.value_si;
      p.ok = true;
    } catch (const Error& e) {
      p.ok = false;
      p.message = e.what();
    }
  };

  const int nt = std::min<int>(resolve_threads(settings.threads),
                               static_cast<int>(points.size()));
  if (nt <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) compute_point(i);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(nt);
    for (int w = 0; w < nt; ++w) {
      workers.emplace_back([&, w]() {
        for (std::size_t i = w; i < points.size(); i += nt) compute_point(i);
      });
    }
    for (auto& t : workers) t.join();
  }
  return points;
}

}  // namespace caspol
