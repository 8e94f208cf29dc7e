#pragma once

#include <cstdint>
#include <optional>

namespace dssp {

/// Seedable counter-based generator (splitmix64 finalizer over seed/counter).
///
/// Output depends only on (seed, number of draws), so results are identical
/// across compilers and standard libraries. Normals use Box-Muller.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform in [0, 1).
  double uniform01() noexcept;
  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;
  bool coin() noexcept { return next_u64() >> 63; }
  double normal() noexcept;

  /// Independent stream derived from this generator's seed.
  Rng split(std::uint64_t stream) const noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_normal_;
};

}  // namespace dssp
