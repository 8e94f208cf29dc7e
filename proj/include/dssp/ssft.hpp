#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dssp/model.hpp"
#include "dssp/oracle.hpp"
#include "dssp/sparse_ft.hpp"
#include "dssp/subset_mask.hpp"

namespace dssp {

struct SsftConfig {
  Model model = Model::Union;
  /// Recovered coefficients with |x| < epsilon (or exactly zero) are dropped.
  double epsilon = 1e-8;
  /// Per-step support cap; the largest-magnitude coefficients survive.
  std::size_t k_max = 1000;
  /// Filter seed for ssft_plus and sampler seed for the model-5 least squares.
  std::uint64_t seed = 0;
  /// Rows per unknown in the model-5 least-squares systems.
  double ls_oversampling = 2.0;
  /// Keep ∅ in the initial support even when the first query falls below
  /// epsilon. Functions normalized to s(∅) = 0 (coverage, facility location,
  /// information gain) otherwise stop at step 0 under model 4.
  bool keep_root = false;

  /// epsilon = 1e-8, for exactly sparse inputs.
  static SsftConfig exact(Model model) { return SsftConfig{.model = model}; }
  /// epsilon = 0.001, k_max = 1000, for measured or approximately sparse inputs.
  static SsftConfig experiment(Model model) { return SsftConfig{.model = model, .epsilon = 1e-3}; }
};

/// Throws InvalidInput on a negative epsilon, k_max = 0 or oversampling < 1.
void validate(const SsftConfig& cfg);

struct SsftReport {
  SparseFT result;
  /// Queries charged to the caller's oracle during the run.
  std::uint64_t queries_used = 0;
  /// Support size after initialization (index 0) and after each element.
  std::vector<std::size_t> support_sizes_per_step;
  /// Some step held more than k_max candidates.
  bool truncated = false;
  std::optional<std::uint64_t> seed_used;
  /// Inner-loop operations of the coefficient solves (subset tests for
  /// models 3/4, matrix entries touched for model 5).
  std::uint64_t solver_work = 0;
};

struct KnownSupportOptions {
  double ls_oversampling = 2.0;
  std::uint64_t seed = 0;
};

/// Coefficients of a function whose spectrum lies inside `support`.
///
/// model 4 queries s(N \ B) for each B and solves the unitriangular system
/// ι_{B_l ⊆ B_j}; model 3 queries s(B) and solves the triangular system with
/// entries (-1)^|B_l| ι_{B_l ⊆ B_j}. Rows and columns are ordered by
/// (cardinality, lexicographic rank) so forward substitution applies.
/// Model 5 fits ⌈ls_oversampling·k⌉ uniformly random queries by least squares,
/// appending up to 8 fresh batches of that size while the system is rank
/// deficient, then throwing RecoveryFailure.
SparseFT solve_known_support(SetFunctionOracle& s, std::span<const SubsetMask> support, Model model,
                             const KnownSupportOptions& options = {});

/// Candidate frequencies for the next restriction and the masks to query.
struct Propagation {
  /// prev followed by prev + x, in the same order.
  std::vector<SubsetMask> candidates;
  /// Aligned with `candidates`: M \ B for model 4, M^c ∪ B for model 3,
  /// where M = m_prev ∪ {x}. Empty for model 5, whose rows are sampled.
  std::vector<SubsetMask> queries;
};

Propagation support_propagate(std::span<const SubsetMask> prev, std::size_t x, const SubsetMask& m_prev, Model model);

/// Sparse set-function Fourier transform.
///
/// Walks the restriction chain M_0 = ∅ ⊂ M_1 ⊂ ... ⊂ M_n = N, adding x_i at
/// step i. Each step doubles the surviving support into {B, B ∪ {x_i}} and
/// solves for the restricted coefficients. For models 3 and 4 the step is two
/// triangular solves against the previous step's system, and half of the
/// queries are reused from the previous step, so a k-sparse function costs at
/// most nk - k log2 k + 2k queries. Model 5 solves a least-squares problem
/// per step. Fails silently (returns a wrong spectrum) when restricted
/// coefficients cancel.
SsftReport ssft(SetFunctionOracle& s, std::size_t n, const SsftConfig& cfg);

/// ssft on h * s for a random one-hop filter h drawn from cfg.seed, then
/// divides each coefficient by h̄(B). Throws DegenerateFilter when
/// |h̄(B)| < 1e-12 at a recovered frequency.
SsftReport ssft_plus(SetFunctionOracle& s, std::size_t n, const SsftConfig& cfg);

}  // namespace dssp
