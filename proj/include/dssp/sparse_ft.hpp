#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dssp/model.hpp"
#include "dssp/subset_mask.hpp"

namespace dssp {

struct FourierEntry {
  SubsetMask set;
  double value = 0.0;
};

/// Sparse Fourier spectrum: frequency -> nonzero coefficient, for one model.
///
/// Entries are kept sorted lexicographically by frequency and every stored
/// coefficient is nonzero. `domain` is the ground set the spectrum lives on;
/// it is N except for spectra of restrictions, and only changes the 2^-|domain|
/// normalization of the model-5 inverse.
class SparseFT {
 public:
  SparseFT(std::size_t n, Model model);
  /// Entries with equal frequency are summed; exact zeros are dropped.
  SparseFT(std::size_t n, Model model, std::vector<FourierEntry> entries,
           std::optional<SubsetMask> domain = std::nullopt);

  std::size_t n() const noexcept { return n_; }
  Model model() const noexcept { return model_; }
  const SubsetMask& domain() const noexcept { return domain_; }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::span<const FourierEntry> entries() const noexcept { return entries_; }

  /// 0 when `b` is not in the support.
  double coefficient(const SubsetMask& b) const;
  bool contains(const SubsetMask& b) const;
  std::vector<SubsetMask> support() const;

 private:
  std::size_t n_;
  Model model_;
  SubsetMask domain_;
  std::vector<FourierEntry> entries_;
};

}  // namespace dssp
