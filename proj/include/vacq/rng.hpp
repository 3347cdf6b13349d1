#ifndef VACQ_RNG_HPP
#define VACQ_RNG_HPP

#include <cmath>
#include <cstdint>

namespace vacq {

/// SplitMix64 (Steele/Lea/Vigna): 64-bit state advanced by the golden-ratio
/// increment, output scrambled by the murmur-style finalizer. Chosen for
/// bit-exact reproducibility across platforms; the standard library's
/// distributions carry no such guarantee.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Exponential via inversion; strictly positive and finite for rate > 0.
  double next_exponential(double rate) { return -std::log1p(-next_uniform()) / rate; }

private:
  std::uint64_t state_;
};

/// Kahan-Neumaier compensated accumulator; order-deterministic sums.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace vacq

#endif
