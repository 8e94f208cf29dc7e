#include "dssp/evaluation.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>

#include "dssp/errors.hpp"
#include "dssp/io.hpp"
#include "dssp/rng.hpp"
#include "dssp/transforms.hpp"

namespace dssp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SubsetMask random_subset(std::size_t n, Rng& rng) {
  SubsetMask a(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.coin()) a.insert(i);
  }
  return a;
}

SubsetMask random_d_subset(std::size_t n, std::size_t d, Rng& rng) {
  SubsetMask a(n);
  // Floyd's sampling of d distinct indices.
  for (std::size_t j = n - d; j < n; ++j) {
    const auto t = static_cast<std::size_t>(rng.below(j + 1));
    a.insert(a.contains(t) ? j : t);
  }
  return a;
}

template <typename Eval>
GreedyResult greedy(std::size_t n, std::size_t d, Eval&& eval) {
  if (d < 1 || d > n) throw InvalidInput("greedy budget d must satisfy 1 <= d <= n");
  GreedyResult out{SubsetMask(n), eval(SubsetMask(n))};
  for (std::size_t round = 0; round < d; ++round) {
    std::size_t best = n;
    double best_value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (out.set.contains(i)) continue;
      const double v = eval(out.set.with(i));
      if (best == n || v > best_value) {
        best = i;
        best_value = v;
      }
    }
    out.set.insert(best);
    out.value = best_value;
  }
  return out;
}

ResultRow run_repetition(const TaskSpec& task, std::size_t rep) {
  ResultRow row;
  row.rep = rep;
  row.seed = task.seed + rep;
  FamilyInstance inst = make_instance(task, row.seed);
  SetFunctionOracle& s = *inst.oracle;

  SsftConfig cfg = task.config;
  cfg.seed = row.seed;
  cfg.keep_root = task.keep_root.value_or(default_keep_root(task.family));

  const auto before = s.query_count();
  const auto start = std::chrono::steady_clock::now();
  SsftReport report = task.learner == Learner::SsftPlus ? ssft_plus(s, s.n(), cfg) : ssft(s, s.n(), cfg);
  const auto stop = std::chrono::steady_clock::now();
  row.queries = s.query_count() - before;
  row.time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  row.k = report.result.size();
  row.truncated = report.truncated;

  auto truth = s.clone();
  try {
    row.rel_error = relative_error(*truth, report.result, task.error_samples, row.seed).relative_error;
  } catch (const UndefinedResult&) {
    row.rel_error = kNaN;
  }

  if (task.greedy_d == 0) {
    row.greedy_true = row.greedy_surrogate = row.greedy_random = kNaN;
    return row;
  }
  row.greedy_true = greedy_maximize(*truth, task.greedy_d).value;
  row.greedy_surrogate = truth->eval(greedy_maximize(report.result, task.greedy_d).set);
  Rng placement = Rng(row.seed).split(0x9ace);
  row.greedy_random = truth->eval(random_d_subset(s.n(), task.greedy_d, placement));
  return row;
}

std::string csv_number(double v) { return std::isnan(v) ? "nan" : format_double(v); }

nlohmann::json json_number(double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); }

}  // namespace

ErrorEstimate relative_error(SetFunctionOracle& truth, const SparseFT& estimate, std::size_t num_samples,
                             std::uint64_t seed) {
  if (num_samples == 0) throw InvalidInput("num_samples must be >= 1");
  if (truth.n() != estimate.n()) throw InvalidInput("estimate and truth have different ground sets");
  Rng rng(seed);
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t t = 0; t < num_samples; ++t) {
    const auto a = random_subset(truth.n(), rng);
    const double p = truth(a);
    const double q = eval_sparse(estimate, a);
    diff += (p - q) * (p - q);
    norm += p * p;
  }
  if (norm == 0.0) throw UndefinedResult("truth is zero on every sampled set; relative error undefined");
  return {std::sqrt(diff / norm), num_samples, seed};
}

GreedyResult greedy_maximize(SetFunctionOracle& s, std::size_t d) {
  return greedy(s.n(), d, [&s](const SubsetMask& a) { return s(a); });
}

GreedyResult greedy_maximize(const SparseFT& ft, std::size_t d) {
  return greedy(ft.n(), d, [&ft](const SubsetMask& a) { return eval_sparse(ft, a); });
}

Learner learner_from_string(const std::string& name) {
  if (name == "ssft") return Learner::Ssft;
  if (name == "ssft+" || name == "ssft_plus" || name == "plus") return Learner::SsftPlus;
  throw InvalidInput("unknown learner '" + name + "'");
}

std::string to_string(Learner l) { return l == Learner::Ssft ? "ssft" : "ssft+"; }

bool default_keep_root(const std::string& family) {
  return family == "facility" || family == "coverage" || family == "preference" || family == "infogain";
}

FamilyInstance make_instance(const TaskSpec& task, std::uint64_t seed) {
  const auto& f = task.family;
  if (f == "random-sparse") {
    auto inst = random_sparse_oracle(task.n, task.k, task.config.model, CoeffDistribution::Normal, seed);
    return {std::move(inst.oracle), std::move(inst.truth)};
  }
  if (f == "facility") return {facility_location_oracle(random_facility(task.rows, task.n, task.density, seed)), {}};
  if (f == "coverage") {
    auto spec = random_coverage(task.n, task.rows, task.density, seed);
    auto truth = coverage_exact_ft(spec);
    return {coverage_oracle(std::move(spec)), std::move(truth)};
  }
  if (f == "preference") return {preference_oracle(random_preference(task.n, task.rows, task.rows, seed)), {}};
  if (f == "infogain") return {information_gain_oracle(random_covariance(task.n, seed), 1.0), {}};
  if (f == "cut-path") return {graph_cut_oracle(path_graph(task.n)), {}};
  if (f == "cut-star") return {graph_cut_oracle(star_graph(task.n)), {}};
  throw InvalidInput("unknown task family '" + f + "'");
}

std::vector<ResultRow> run_experiment(const TaskSpec& task) {
  if (task.repetitions == 0) throw InvalidInput("repetitions must be >= 1");
  validate(task.config);
  std::vector<ResultRow> rows;
  rows.reserve(task.repetitions);
  if (!task.parallel) {
    for (std::size_t r = 0; r < task.repetitions; ++r) rows.push_back(run_repetition(task, r));
    return rows;
  }
  std::vector<std::future<ResultRow>> pending;
  pending.reserve(task.repetitions);
  for (std::size_t r = 0; r < task.repetitions; ++r) {
    pending.push_back(std::async(std::launch::async, run_repetition, std::cref(task), r));
  }
  for (auto& p : pending) rows.push_back(p.get());
  return rows;
}

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "rep,seed,queries,time_ms,k,rel_error,greedy_true,greedy_surrogate,greedy_random\n";
  for (const auto& r : rows) {
    out << r.rep << ',' << r.seed << ',' << r.queries << ',' << csv_number(r.time_ms) << ',' << r.k << ','
        << csv_number(r.rel_error) << ',' << csv_number(r.greedy_true) << ',' << csv_number(r.greedy_surrogate)
        << ',' << csv_number(r.greedy_random) << '\n';
  }
}

nlohmann::json rows_to_json(const TaskSpec& task, const std::vector<ResultRow>& rows) {
  nlohmann::json out_rows = nlohmann::json::array();
  for (const auto& r : rows) {
    out_rows.push_back({{"rep", r.rep},
                        {"seed", r.seed},
                        {"queries", r.queries},
                        {"time_ms", r.time_ms},
                        {"k", r.k},
                        {"rel_error", json_number(r.rel_error)},
                        {"greedy_true", json_number(r.greedy_true)},
                        {"greedy_surrogate", json_number(r.greedy_surrogate)},
                        {"greedy_random", json_number(r.greedy_random)},
                        {"truncated", r.truncated}});
  }
  return {{"schema_version", kSchemaVersion},
          {"task",
           {{"family", task.family},
            {"n", task.n},
            {"k", task.k},
            {"rows", task.rows},
            {"density", task.density},
            {"learner", to_string(task.learner)},
            {"model", model_number(task.config.model)},
            {"epsilon", task.config.epsilon},
            {"k_max", task.config.k_max},
            {"repetitions", task.repetitions},
            {"seed", task.seed},
            {"error_samples", task.error_samples},
            {"greedy_d", task.greedy_d}}},
          {"rows", out_rows}};
}

nlohmann::json to_json(const ErrorEstimate& e) {
  return {{"schema_version", kSchemaVersion},
          {"relative_error", e.relative_error},
          {"num_samples", e.num_samples},
          {"seed", e.seed}};
}

}  // namespace dssp
