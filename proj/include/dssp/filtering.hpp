#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dssp/dense.hpp"
#include "dssp/model.hpp"
#include "dssp/oracle.hpp"
#include "dssp/subset_mask.hpp"

namespace dssp {

/// Filter supported on ∅ and the singletons: h(∅) = 1, h({x_i}) = singleton(i).
class OneHopFilter {
 public:
  explicit OneHopFilter(std::vector<double> singleton_coeffs);

  std::size_t n() const noexcept { return coeffs_.size(); }
  static constexpr double base() noexcept { return 1.0; }
  double singleton(std::size_t i) const { return coeffs_.at(i); }
  const std::vector<double>& singleton_coeffs() const noexcept { return coeffs_; }

 private:
  std::vector<double> coeffs_;
};

/// Singletons drawn i.i.d. N(0, 1) from a generator seeded with `seed`.
OneHopFilter sample_one_hop(std::size_t n, std::uint64_t seed);

/// Oracle for h * s under the model's shift.
///
/// eval(A) = s(A) + sum_i h({x_i}) s(A ⊕ {x_i}), with ⊕ = ∪ (model 4),
/// \ (model 3) or Δ (model 5). Shifts that land back on A are merged, so one
/// evaluation queries the inner oracle 1 + n - |A| times for model 4, 1 + |A|
/// times for model 3 and 1 + n times for model 5.
///
/// The inner oracle is borrowed and must outlive this object; clones own a
/// fresh clone of the inner oracle.
class FilteredOracle final : public SetFunctionOracle {
 public:
  FilteredOracle(OneHopFilter h, SetFunctionOracle& inner, Model model);
  FilteredOracle(OneHopFilter h, std::unique_ptr<SetFunctionOracle> inner, Model model);

  const OneHopFilter& filter() const noexcept { return h_; }
  Model model() const noexcept { return model_; }
  SetFunctionOracle& inner() noexcept { return *inner_; }
  const SetFunctionOracle& inner() const noexcept { return *inner_; }

 protected:
  double evaluate(const SubsetMask& a) override;
  std::unique_ptr<SetFunctionOracle> do_clone() const override;

 private:
  OneHopFilter h_;
  Model model_;
  std::unique_ptr<SetFunctionOracle> owned_;
  SetFunctionOracle* inner_;
};

std::unique_ptr<FilteredOracle> filtered_oracle(const OneHopFilter& h, SetFunctionOracle& s, Model model);

/// h̄(B): 1 + sum_{x ∉ B} h({x}) for models 3 and 4, and
/// 1 + sum_{x ∉ B} h({x}) - sum_{x ∈ B} h({x}) for model 5.
double frequency_response(const OneHopFilter& h, const SubsetMask& b, Model model);

/// Filter given as a full set function h (2^n values).
/// Naive O(4^n) convolution (h * s)(A) = sum_Q h(Q) s(A ⊕ Q); test reference only.
DenseSetFunction dense_convolve(const DenseSetFunction& h, const DenseSetFunction& s, Model model);

/// The one-hop filter written out as a dense set function.
DenseSetFunction to_dense(const OneHopFilter& h);

}  // namespace dssp
