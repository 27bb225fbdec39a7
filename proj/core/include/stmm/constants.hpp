#pragma once

#include <numbers>

namespace stmm {

inline constexpr double speed_of_light = 299792458.0;
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace stmm
