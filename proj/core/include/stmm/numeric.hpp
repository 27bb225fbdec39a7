#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>

#include "stmm/constants.hpp"

namespace stmm {

using cplx = std::complex<double>;

// Fixed-shape pairwise reduction: the split points depend only on the length,
// so the result is reproducible regardless of who calls it.
template <class T>
T pairwise_sum(std::span<const T> x) {
  const std::size_t n = x.size();
  if (n == 0) return T{};
  if (n <= 8) {
    T acc = x[0];
    for (std::size_t i = 1; i < n; ++i) acc += x[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x.subspan(0, half)) + pairwise_sum(x.subspan(half));
}

inline double to_db(double ratio) { return 10.0 * std::log10(ratio); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }
inline double deg_to_rad(double deg) { return deg * (pi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / pi); }

// Wraps into [0, 2*pi).
inline double wrap_phase(double x) {
  double r = std::fmod(x, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

}  // namespace stmm
