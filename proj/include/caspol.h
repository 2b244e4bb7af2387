/* caspol: Casimir-Polder free energies and forces between ground-state
 * atoms and material plates, with or without a graphene coating.
 *
 * C API of the shared library.  All handles are opaque; every function
 * returns a caspol_status and writes results through out-parameters.
 * caspol_last_error() returns a thread-local message for the most recent
 * failure on the calling thread.
 *
 * Units at this boundary are SI (meters, Kelvin, Joules, Newtons) except
 * for spectral quantities, which are conventionally quoted in eV.
 */
#ifndef CASPOL_H
#define CASPOL_H

#include <stddef.h>

#if defined(_WIN32)
#define CASPOL_API __declspec(dllexport)
#else
#define CASPOL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum caspol_status {
  CASPOL_OK = 0,
  CASPOL_ERR_INVALID_ARGUMENT = 1,
  CASPOL_ERR_UNKNOWN_NAME = 2,
  CASPOL_ERR_DOMAIN = 3,
  CASPOL_ERR_PARSE = 4,
  CASPOL_ERR_IO = 5,
  CASPOL_ERR_NO_CONVERGENCE = 6,
  CASPOL_ERR_INTERNAL = 7
} caspol_status;

typedef enum caspol_quantity {
  CASPOL_FREE_ENERGY = 0, /* F(a,T), Joules */
  CASPOL_FORCE = 1,       /* F(a,T), Newtons */
  CASPOL_ENERGY_T0 = 2    /* E(a) at T = 0, Joules */
} caspol_quantity;

typedef struct caspol_atom caspol_atom;
typedef struct caspol_material caspol_material;

/* Physical constants; override for reproducibility experiments.  A NULL
 * constants pointer anywhere means the defaults below. */
typedef struct caspol_constants {
  double hbar_c_ev_nm;          /* 197.327 */
  double boltzmann_ev_per_k;    /* 8.617333e-5 */
  double fine_structure;        /* 7.2973525693e-3 */
  double fermi_velocity_ratio;  /* v_F/c, 9e5/2.99792458e8 */
  double polarizability_au_m3;  /* 1.482e-31 m^3 per atomic unit */
} caspol_constants;

typedef struct caspol_settings {
  double quad_rel_tol;        /* default 1e-8 */
  double sum_rel_tol;         /* default 1e-9 */
  long max_matsubara_terms;   /* default 100000 */
  double zero_t_freq_tol;     /* default 1e-8 */
  int threads;                /* sweep parallelism; 0 = hardware */
} caspol_settings;

typedef struct caspol_result {
  double value_si;            /* Joules or Newtons, negative (attractive) */
  double value_dimensionless; /* value * 8a^3/(kB T alpha(0)) or force/T0 analogues */
  long terms_used;
  double est_error;           /* relative */
} caspol_result;

typedef struct caspol_classical_expansion {
  double leading;
  double first_correction;
  double second_correction;
  double total;
} caspol_classical_expansion;

CASPOL_API const char* caspol_version(void);
CASPOL_API const char* caspol_last_error(void);
CASPOL_API void caspol_constants_default(caspol_constants* out);
CASPOL_API void caspol_settings_default(caspol_settings* out);

/* ----- atoms ----------------------------------------------------------- */

/* Built-in catalog: Rb, Na, Cs, He* */
CASPOL_API caspol_status caspol_atom_builtin(const char* name,
                                             caspol_atom** out);
CASPOL_API caspol_status caspol_atom_custom(const char* name,
                                            double alpha0_au,
                                            double omega0_ev,
                                            caspol_atom** out);
CASPOL_API void caspol_atom_free(caspol_atom* atom);
/* Dynamic polarizability alpha(i xi) in atomic units. */
CASPOL_API caspol_status caspol_atom_polarizability(const caspol_atom* atom,
                                                    double xi_ev,
                                                    double* out_au);

/* ----- materials ------------------------------------------------------- */

/* Built-ins: Au (Drude 9 eV/0.035 eV), Au-plasma, Si, Al2O3, SiO2, PEC,
 * vacuum. */
CASPOL_API caspol_status caspol_material_builtin(const char* name,
                                                 caspol_material** out);
CASPOL_API caspol_status caspol_material_drude(double wp_ev, double gamma_ev,
                                               caspol_material** out);
CASPOL_API caspol_status caspol_material_plasma(double wp_ev,
                                                caspol_material** out);
CASPOL_API caspol_status caspol_material_oscillators(const double* strength,
                                                     const double* resonance_ev,
                                                     const double* damping_ev,
                                                     size_t count,
                                                     caspol_material** out);
CASPOL_API caspol_status caspol_material_perfect_conductor(
    caspol_material** out);
CASPOL_API caspol_status caspol_material_vacuum(caspol_material** out);
/* Tabulated eps(i xi): xi strictly increasing (eV), eps >= 1 non-increasing. */
CASPOL_API caspol_status caspol_material_tabulated(const double* xi_ev,
                                                   const double* eps,
                                                   size_t count,
                                                   caspol_material** out);
/* Record 'name' from a materials database file (docs/file-formats.md). */
CASPOL_API caspol_status caspol_material_from_db(const char* path,
                                                 const char* name,
                                                 caspol_material** out);
/* Tabulated Im eps(omega) from a two-column text file, transformed to the
 * imaginary axis via the Kramers-Kronig relation.  extrapolation: 0 none,
 * 1 Drude (wp, gamma), 2 plasma (wp). */
CASPOL_API caspol_status caspol_material_optical_data(const char* path,
                                                      int extrapolation,
                                                      double wp_ev,
                                                      double gamma_ev,
                                                      caspol_material** out);
CASPOL_API void caspol_material_free(caspol_material* material);
CASPOL_API caspol_status caspol_material_permittivity(
    const caspol_material* material, double xi_ev, double* out);
/* *out_is_infinite is set to 1 for metals (eps0 is then unset). */
CASPOL_API caspol_status caspol_material_static_permittivity(
    const caspol_material* material, double* out_eps0, int* out_is_infinite);

/* ----- computations ---------------------------------------------------- */

CASPOL_API caspol_status caspol_compute(const caspol_material* plate,
                                        int graphene_coated,
                                        const caspol_atom* atom,
                                        double separation_m,
                                        double temperature_k,
                                        caspol_quantity quantity,
                                        const caspol_settings* settings,
                                        const caspol_constants* constants,
                                        caspol_result* out);

/* Coated/bare ratio at each separation.  On a per-point failure the ratio
 * slot is set to NaN and, when point_status is non-NULL, the status is
 * recorded there; the function then returns the first failing status unless
 * keep_going is set, in which case it returns CASPOL_OK. */
CASPOL_API caspol_status caspol_ratio_sweep(const caspol_material* plate,
                                            const caspol_atom* atom,
                                            const double* separations_m,
                                            size_t count,
                                            double temperature_k,
                                            caspol_quantity quantity,
                                            int keep_going,
                                            const caspol_settings* settings,
                                            const caspol_constants* constants,
                                            double* ratios_out,
                                            caspol_status* point_status);

/* Classical (high-temperature) closed forms; quantity must be
 * CASPOL_FREE_ENERGY or CASPOL_FORCE. */
CASPOL_API caspol_status caspol_classical(const caspol_material* plate,
                                          int graphene_coated,
                                          const caspol_atom* atom,
                                          double separation_m,
                                          double temperature_k,
                                          caspol_quantity quantity,
                                          const caspol_constants* constants,
                                          caspol_classical_expansion* out);

/* Smallest separation (1-20 um, 50 grid points/decade) where the engine and
 * the classical expression stay within rel_tol of each other. */
CASPOL_API caspol_status caspol_crossover_separation(
    const caspol_material* plate, int graphene_coated, const caspol_atom* atom,
    double temperature_k, double rel_tol, caspol_quantity quantity,
    const caspol_settings* settings, const caspol_constants* constants,
    double* separation_m_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CASPOL_H */
