#pragma once

namespace caspol {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace caspol
