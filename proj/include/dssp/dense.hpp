#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dssp/subset_mask.hpp"

namespace dssp {

/// All 2^n values of a set function, indexed by lexicographic rank
/// (x_1 most significant).
class DenseSetFunction {
 public:
  /// values.size() must be 2^n.
  DenseSetFunction(std::size_t n, std::vector<double> values);

  static DenseSetFunction zeros(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::uint64_t rank) const { return values_[rank]; }
  double at(const SubsetMask& a) const;

  std::vector<double> into_values() && { return std::move(values_); }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

/// 2^n, or CapacityError when the dense vector cannot be addressed.
std::size_t dense_size(std::size_t n);

}  // namespace dssp
