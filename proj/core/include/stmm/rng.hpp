#pragma once

#include <complex>
#include <cstdint>

namespace stmm {

// Counter-based generator: output i is a pure function of (key, i), so any
// draw can be reproduced without replaying the ones before it.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(mix(key ^ 0x6a09e667f3bcc909ULL)) {}

  std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // Uniform in (0, 1).
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double normal();
  std::complex<double> complex_normal(double variance);

  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  // Independent stream for work item i; does not advance this generator.
  CounterRng substream(std::uint64_t i) const { return CounterRng(mix(key_ ^ mix(i + 0x243f6a8885a308d3ULL))); }

  std::uint64_t counter() const { return counter_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace stmm
