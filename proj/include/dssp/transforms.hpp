#pragma once

#include <cstdint>

#include "dssp/dense.hpp"
#include "dssp/model.hpp"
#include "dssp/sparse_ft.hpp"
#include "dssp/subset_mask.hpp"

namespace dssp {

struct TransformStats {
  std::uint64_t butterflies = 0;
};

/// Fast Fourier transform of a dense set function.
///
/// Applies the n-fold Kronecker power of the model's 2x2 matrix in place,
/// one stage per element x_1..x_n, for exactly n*2^(n-1) butterflies:
///
///   model 3: [1 0; 1 -1]   model 4: [0 1; 1 -1]   model 5: [1 1; 1 -1]
///
/// The model-5 forward transform is the unnormalized +-1 Walsh-Hadamard
/// matrix; its 1/2^n factor lives in dense_ift().
DenseSetFunction dense_ft(DenseSetFunction f, Model model, TransformStats* stats = nullptr);

/// Exact inverse of dense_ft() for the same model.
///
///   model 3: [1 0; 1 -1]   model 4: [1 1; 1 0]   model 5: [1 1; 1 -1] / 2
DenseSetFunction dense_ift(DenseSetFunction coeffs, Model model, TransformStats* stats = nullptr);

/// s(A) from a sparse spectrum in O(k):
///   model 3: sum over B ⊆ A of (-1)^|B| ŝ(B)
///   model 4: sum over B with A ∩ B = ∅ of ŝ(B)
///   model 5: 2^-|domain| sum over B of (-1)^|A∩B| ŝ(B)
double eval_sparse(const SparseFT& ft, const SubsetMask& a);

/// Spectrum of the restriction of s to subsets of `m`.
///
/// model 4: ŝ|(B) = sum_{A ⊆ D\M} ŝ(A ∪ B)                (restriction s|_{2^M})
/// model 3: ŝ|(B) = sum_{A ⊆ D\M} (-1)^|A| ŝ(A ∪ B)       (restriction C -> s(M^c ∪ C))
/// model 5: ŝ|(B) = 2^-(|D|-|M|) sum_{A ⊆ D\M} ŝ(A ∪ B)   (restriction s|_{2^M})
///
/// D is ft.domain(); `m` must be a subset of it and becomes the result's domain.
/// Sums that come out exactly zero are dropped.
SparseFT restrict_ft(const SparseFT& ft, const SubsetMask& m, Model model);

/// Dense coefficient vector of a sparse spectrum (zeros off the support).
DenseSetFunction to_dense_coefficients(const SparseFT& ft);

/// Sparse view of a dense coefficient vector, keeping |c| > threshold.
SparseFT to_sparse(const DenseSetFunction& coeffs, Model model, double threshold = 0.0);

}  // namespace dssp
