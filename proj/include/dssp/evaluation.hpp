#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dssp/generators.hpp"
#include "dssp/oracle.hpp"
#include "dssp/sparse_ft.hpp"
#include "dssp/ssft.hpp"
#include "dssp/subset_mask.hpp"

namespace dssp {

inline constexpr std::size_t kDefaultErrorSamples = 100000;

struct ErrorEstimate {
  double relative_error = 0.0;
  std::size_t num_samples = 0;
  std::uint64_t seed = 0;
};

/// ‖p - p'‖₂ / ‖p‖₂ over `num_samples` uniformly random sets (drawn with
/// replacement), where p queries `truth` and p' evaluates `estimate`.
/// Throws UndefinedResult when truth vanishes on every sampled set.
ErrorEstimate relative_error(SetFunctionOracle& truth, const SparseFT& estimate,
                             std::size_t num_samples = kDefaultErrorSamples, std::uint64_t seed = 0);

struct GreedyResult {
  SubsetMask set;
  double value = 0.0;
};

/// d rounds; each adds the element with the largest marginal gain (even if
/// negative), ties to the smallest index. n·d - d(d-1)/2 + 1 evaluations.
GreedyResult greedy_maximize(SetFunctionOracle& s, std::size_t d);
GreedyResult greedy_maximize(const SparseFT& ft, std::size_t d);

enum class Learner { Ssft, SsftPlus };

Learner learner_from_string(const std::string& name);
std::string to_string(Learner l);

/// One experiment: a function family, a learner and a number of repetitions.
struct TaskSpec {
  /// random-sparse, facility, coverage, preference, infogain, cut-path, cut-star
  std::string family = "random-sparse";
  std::size_t n = 10;
  /// random-sparse: number of coefficients.
  std::size_t k = 8;
  /// facility / preference: L (and K for preference); coverage: universe size.
  std::size_t rows = 5;
  /// facility: fraction of nonzero utilities; coverage: membership probability.
  double density = 1.0;
  Learner learner = Learner::Ssft;
  SsftConfig config = SsftConfig::exact(Model::Union);
  /// Unset: default_keep_root(family).
  std::optional<bool> keep_root;
  std::size_t repetitions = 1;
  /// Repetition r uses seed + r for the instance, the learner and the sampling.
  std::uint64_t seed = 0;
  std::size_t error_samples = kDefaultErrorSamples;
  /// Cardinality budget for the placement comparison; 0 skips it.
  std::size_t greedy_d = 0;
  /// Run repetitions concurrently on independent oracles.
  bool parallel = false;
};

/// True for the submodular families normalized to s(∅) = 0 (facility,
/// coverage, preference, infogain). Cuts also vanish on ∅ but stay on the
/// literal algorithm, where they exhibit the cancellation failure.
bool default_keep_root(const std::string& family);

/// The function for one repetition of `task`.
FamilyInstance make_instance(const TaskSpec& task, std::uint64_t seed);

struct ResultRow {
  std::size_t rep = 0;
  std::uint64_t seed = 0;
  std::uint64_t queries = 0;
  double time_ms = 0.0;
  std::size_t k = 0;
  /// NaN when the truth vanishes on every sample.
  double rel_error = 0.0;
  /// True objective of the greedy set on the truth, on the surrogate, and of
  /// a uniformly random d-subset. NaN when greedy_d = 0.
  double greedy_true = 0.0;
  double greedy_surrogate = 0.0;
  double greedy_random = 0.0;
  bool truncated = false;
};

std::vector<ResultRow> run_experiment(const TaskSpec& task);

/// Header: rep,seed,queries,time_ms,k,rel_error,greedy_true,greedy_surrogate,greedy_random
void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows);
nlohmann::json rows_to_json(const TaskSpec& task, const std::vector<ResultRow>& rows);
nlohmann::json to_json(const ErrorEstimate& e);

}  // namespace dssp
