#include "dssp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "dssp/errors.hpp"
#include "dssp/io.hpp"
#include "dssp/rng.hpp"
#include "dssp/transforms.hpp"

namespace dssp {

namespace {

void check_matrix(const Matrix& m, std::size_t n, const char* name) {
  for (const auto& row : m) {
    if (row.size() != n) throw InvalidInput(std::string(name) + " rows must have length n");
    for (double v : row) {
      if (!std::isfinite(v) || v < 0.0) throw InvalidInput(std::string(name) + " entries must be finite and >= 0");
    }
  }
}

double row_max(const std::vector<double>& row, const std::vector<std::size_t>& members) {
  double best = 0.0;
  bool any = false;
  for (auto i : members) {
    if (!any || row[i] > best) best = row[i];
    any = true;
  }
  return best;
}

double row_sum(const std::vector<double>& row, const std::vector<std::size_t>& members) {
  double total = 0.0;
  for (auto i : members) total += row[i];
  return total;
}

bool has_ties(const std::vector<double>& row) {
  auto sorted = row;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

std::vector<double> tie_free_row(std::size_t n, Rng& rng) {
  std::vector<double> row(n);
  do {
    for (auto& v : row) v = rng.uniform01();
  } while (has_ties(row));
  return row;
}

template <typename T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("spec is missing \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad \"") + key + "\": " + e.what());
  }
}

std::size_t index_from_json(const nlohmann::json& v, std::size_t n, const char* what) {
  if (!v.is_number_integer()) throw InvalidInput(std::string(what) + " must be an integer");
  const auto i = v.get<long long>();
  if (i < 1 || static_cast<std::size_t>(i) > n) throw InvalidInput(std::string(what) + " out of range");
  return static_cast<std::size_t>(i - 1);
}

class SparseFTOracle final : public SetFunctionOracle {
 public:
  explicit SparseFTOracle(SparseFT ft) : SetFunctionOracle(ft.n()), ft_(std::move(ft)) {}

 protected:
  double evaluate(const SubsetMask& a) override { return eval_sparse(ft_, a); }
  std::unique_ptr<SetFunctionOracle> do_clone() const override { return std::make_unique<SparseFTOracle>(*this); }

 private:
  SparseFT ft_;
};

class InformationGainOracle final : public SetFunctionOracle {
 public:
  InformationGainOracle(Eigen::MatrixXd k, double sigma)
      : SetFunctionOracle(static_cast<std::size_t>(k.rows())), k_(std::move(k)), inv_var_(1.0 / (sigma * sigma)) {}

 protected:
  double evaluate(const SubsetMask& a) override {
    const auto idx = a.elements();
    if (idx.empty()) return 0.0;
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd sub(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index c = 0; c < m; ++c) {
        sub(r, c) = inv_var_ * k_(static_cast<Eigen::Index>(idx[r]), static_cast<Eigen::Index>(idx[c]));
      }
    }
    sub.diagonal().array() += 1.0;
    const Eigen::LLT<Eigen::MatrixXd> llt(sub);
    // ½ log det = Σ log L_ii
    return llt.matrixLLT().diagonal().array().log().sum();
  }
  std::unique_ptr<SetFunctionOracle> do_clone() const override {
    return std::make_unique<InformationGainOracle>(*this);
  }

 private:
  Eigen::MatrixXd k_;
  double inv_var_;
};

}  // namespace

void validate(const CoverageSpec& spec) {
  if (spec.membership.empty()) throw InvalidInput("coverage spec needs n >= 1 sets");
  if (spec.weights.size() != spec.universe_size) throw InvalidInput("need one weight per universe element");
  for (double w : spec.weights) {
    if (!std::isfinite(w)) throw InvalidInput("coverage weights must be finite");
  }
  std::unordered_set<SubsetMask, SubsetMaskHash> seen;
  for (const auto& s : spec.membership) {
    if (s.n() != spec.universe_size) throw InvalidInput("membership mask does not match the universe size");
    if (!seen.insert(s).second) throw InvalidInput("coverage sets must be distinct");
  }
}

void validate(const PreferenceSpec& spec) {
  if (spec.u.empty()) throw InvalidInput("preference spec needs n >= 1");
  for (double v : spec.u) {
    if (!std::isfinite(v)) throw InvalidInput("modular weights must be finite");
  }
  check_matrix(spec.r, spec.n(), "r");
  check_matrix(spec.a, spec.n(), "a");
}

void validate(const GraphSpec& spec) {
  if (spec.n == 0) throw InvalidInput("graph needs n >= 1 vertices");
  std::unordered_set<std::uint64_t> seen;
  for (const auto& e : spec.edges) {
    if (e.i >= spec.n || e.j >= spec.n) throw InvalidInput("edge endpoint out of range");
    if (e.i == e.j) throw InvalidInput("self-loops are not allowed");
    if (!std::isfinite(e.w)) throw InvalidInput("edge weights must be finite");
    const auto lo = std::min(e.i, e.j);
    const auto hi = std::max(e.i, e.j);
    if (!seen.insert(static_cast<std::uint64_t>(lo) * spec.n + hi).second) {
      throw InvalidInput("parallel edges are not allowed");
    }
  }
}

std::unique_ptr<SetFunctionOracle> coverage_oracle(CoverageSpec spec) {
  validate(spec);
  const auto n = spec.n();
  return std::make_unique<FunctionOracle>(n, [spec = std::move(spec)](const SubsetMask& a) {
    SubsetMask covered(spec.universe_size);
    for (auto i : a.elements()) covered |= spec.membership[i];
    double total = 0.0;
    for (auto u : covered.elements()) total += spec.weights[u];
    return total;
  });
}

CoverageSpec all_cover_one(std::size_t n) {
  CoverageSpec spec{.universe_size = n};
  // S_i = {0, i}: distinct sets sharing universe element 0 (the others carry weight 0).
  for (std::size_t i = 0; i < n; ++i) {
    SubsetMask s(n);
    s.insert(0);
    s.insert(i);
    spec.membership.push_back(std::move(s));
  }
  spec.weights.assign(n, 0.0);
  spec.weights[0] = 1.0;
  return spec;
}

SparseFT coverage_exact_ft(const CoverageSpec& spec) {
  validate(spec);
  const auto n = spec.n();
  std::vector<FourierEntry> entries;
  double covered_weight = 0.0;
  for (std::size_t u = 0; u < spec.universe_size; ++u) {
    SubsetMask signature(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (spec.membership[i].contains(u)) signature.insert(i);
    }
    if (signature.is_empty()) continue;
    covered_weight += spec.weights[u];
    entries.push_back({std::move(signature), -spec.weights[u]});
  }
  entries.push_back({SubsetMask(n), covered_weight});
  return {n, Model::Union, std::move(entries)};
}

std::unique_ptr<SetFunctionOracle> preference_oracle(PreferenceSpec spec) {
  validate(spec);
  const auto n = spec.n();
  return std::make_unique<FunctionOracle>(n, [spec = std::move(spec)](const SubsetMask& a) {
    const auto members = a.elements();
    double total = row_sum(spec.u, members);
    for (const auto& row : spec.r) total += row_max(row, members) - row_sum(row, members);
    for (const auto& row : spec.a) total -= row_max(row, members) - row_sum(row, members);
    return total;
  });
}

std::unique_ptr<SetFunctionOracle> facility_location_oracle(Matrix r) {
  if (r.empty() || r.front().empty()) throw InvalidInput("facility matrix needs L >= 1 rows and n >= 1 columns");
  const auto n = r.front().size();
  check_matrix(r, n, "r");
  return std::make_unique<FunctionOracle>(n, [r = std::move(r)](const SubsetMask& a) {
    const auto members = a.elements();
    double total = 0.0;
    for (const auto& row : r) total += row_max(row, members);
    return total;
  });
}

std::unique_ptr<SetFunctionOracle> graph_cut_oracle(GraphSpec g) {
  validate(g);
  const auto n = g.n;
  return std::make_unique<FunctionOracle>(n, [g = std::move(g)](const SubsetMask& a) {
    double total = 0.0;
    for (const auto& e : g.edges) {
      if (a.contains(e.i) != a.contains(e.j)) total += e.w;
    }
    return total;
  });
}

GraphSpec path_graph(std::size_t n) {
  GraphSpec g{.n = n};
  for (std::size_t i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, 1.0});
  return g;
}

GraphSpec star_graph(std::size_t n) {
  GraphSpec g{.n = n};
  for (std::size_t i = 1; i < n; ++i) g.edges.push_back({0, i, 1.0});
  return g;
}

CoeffDistribution coeff_distribution_from_string(const std::string& name) {
  if (name == "normal") return CoeffDistribution::Normal;
  if (name == "uniform") return CoeffDistribution::Uniform;
  throw InvalidInput("unknown coefficient distribution '" + name + "'");
}

std::string to_string(CoeffDistribution d) { return d == CoeffDistribution::Normal ? "normal" : "uniform"; }

SparseInstance random_sparse_oracle(std::size_t n, std::size_t k, Model model, CoeffDistribution dist,
                                    std::uint64_t seed) {
  if (n == 0) throw InvalidInput("n must be >= 1");
  if (k == 0) throw InvalidInput("k must be >= 1");
  if (n < 63 && k > (std::uint64_t{1} << n)) throw InvalidInput("k exceeds 2^n");
  Rng rng(seed);
  Rng coef_rng = rng.split(1);
  std::unordered_set<SubsetMask, SubsetMaskHash> chosen;
  std::vector<FourierEntry> entries;
  entries.reserve(k);
  while (entries.size() < k) {
    SubsetMask b(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.coin()) b.insert(i);
    }
    if (!chosen.insert(b).second) continue;
    double c = 0.0;
    while (c == 0.0) c = dist == CoeffDistribution::Normal ? coef_rng.normal() : 2.0 * coef_rng.uniform01() - 1.0;
    entries.push_back({std::move(b), c});
  }
  SparseFT truth(n, model, std::move(entries));
  auto oracle = sparse_ft_oracle(truth);
  return {std::move(oracle), std::move(truth)};
}

std::unique_ptr<SetFunctionOracle> sparse_ft_oracle(SparseFT ft) {
  return std::make_unique<SparseFTOracle>(std::move(ft));
}

std::unique_ptr<SetFunctionOracle> information_gain_oracle(const Eigen::MatrixXd& k, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidInput("sigma must be positive");
  if (k.rows() == 0 || k.rows() != k.cols()) throw InvalidInput("covariance must be square with n >= 1");
  if (!k.allFinite()) throw InvalidInput("covariance entries must be finite");
  const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
  if ((k - k.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidInput("covariance must be symmetric");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw InvalidInput("covariance is not positive semidefinite");
  }
  return std::make_unique<InformationGainOracle>(k, sigma);
}

CoverageSpec random_coverage(std::size_t n, std::size_t universe_size, double density, std::uint64_t seed) {
  if (n == 0 || universe_size == 0) throw InvalidInput("n and universe size must be >= 1");
  if (!(density >= 0.0 && density <= 1.0)) throw InvalidInput("density must lie in [0, 1]");
  if (universe_size < 63 && n > (std::uint64_t{1} << universe_size)) {
    throw InvalidInput("universe too small for n distinct sets");
  }
  Rng rng(seed);
  CoverageSpec spec{.universe_size = universe_size};
  std::unordered_set<SubsetMask, SubsetMaskHash> seen;
  while (spec.membership.size() < n) {
    SubsetMask s(universe_size);
    for (std::size_t u = 0; u < universe_size; ++u) {
      if (rng.uniform01() < density) s.insert(u);
    }
    if (seen.insert(s).second) spec.membership.push_back(std::move(s));
  }
  spec.weights.resize(universe_size);
  for (auto& w : spec.weights) w = 1.0 - rng.uniform01();
  return spec;
}

PreferenceSpec random_preference(std::size_t n, std::size_t l, std::size_t k, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("n must be >= 1");
  Rng rng(seed);
  PreferenceSpec spec;
  spec.u.resize(n);
  for (auto& v : spec.u) v = rng.uniform01();
  for (std::size_t i = 0; i < l; ++i) spec.r.push_back(tie_free_row(n, rng));
  for (std::size_t i = 0; i < k; ++i) spec.a.push_back(tie_free_row(n, rng));
  return spec;
}

Matrix random_facility(std::size_t l, std::size_t n, double density, std::uint64_t seed) {
  if (l == 0 || n == 0) throw InvalidInput("facility matrix needs L, n >= 1");
  if (!(density > 0.0 && density <= 1.0)) throw InvalidInput("density must lie in (0, 1]");
  Rng rng(seed);
  Matrix r(l, std::vector<double>(n));
  for (auto& row : r) {
    for (auto& v : row) {
      const double value = rng.uniform01();
      v = rng.uniform01() < density ? value : 0.0;
    }
  }
  return r;
}

Eigen::MatrixXd random_covariance(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("n must be >= 1");
  Rng rng(seed);
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) g(r, c) = rng.normal();
  }
  Eigen::MatrixXd k = g * g.transpose();
  k.diagonal().array() += 1e-6;
  return k;
}

PreferenceSpec facility_as_preference(const Matrix& r) {
  if (r.empty() || r.front().empty()) throw InvalidInput("facility matrix needs L >= 1 rows and n >= 1 columns");
  PreferenceSpec spec;
  spec.u.assign(r.front().size(), 0.0);
  for (const auto& row : r) {
    if (row.size() != spec.u.size()) throw InvalidInput("r rows must have length n");
    for (std::size_t i = 0; i < row.size(); ++i) spec.u[i] += row[i];
  }
  spec.r = r;
  return spec;
}

nlohmann::json to_json(const CoverageSpec& spec) {
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& s : spec.membership) sets.push_back(s.elements());
  return {{"family", "coverage"},
          {"n", spec.n()},
          {"universe_size", spec.universe_size},
          {"sets", sets},
          {"weights", spec.weights}};
}

nlohmann::json to_json(const PreferenceSpec& spec) {
  return {{"family", "preference"}, {"n", spec.n()}, {"u", spec.u}, {"r", spec.r}, {"a", spec.a}};
}

nlohmann::json to_json(const GraphSpec& spec) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : spec.edges) edges.push_back({e.i + 1, e.j + 1, e.w});
  return {{"family", "cut"}, {"n", spec.n}, {"edges", edges}};
}

CoverageSpec coverage_from_json(const nlohmann::json& j) {
  CoverageSpec spec{.universe_size = field<std::size_t>(j, "universe_size")};
  const auto n = field<std::size_t>(j, "n");
  const auto sets = field<std::vector<std::vector<std::size_t>>>(j, "sets");
  if (sets.size() != n) throw InvalidInput("coverage spec lists a different number of sets than n");
  for (const auto& s : sets) {
    SubsetMask m(spec.universe_size);
    for (auto u : s) {
      if (u >= spec.universe_size) throw InvalidInput("universe element out of range");
      m.insert(u);
    }
    spec.membership.push_back(std::move(m));
  }
  spec.weights = field<std::vector<double>>(j, "weights");
  validate(spec);
  return spec;
}

PreferenceSpec preference_from_json(const nlohmann::json& j) {
  PreferenceSpec spec;
  spec.u = field<std::vector<double>>(j, "u");
  spec.r = j.contains("r") ? matrix_from_json(j.at("r")) : Matrix{};
  spec.a = j.contains("a") ? matrix_from_json(j.at("a")) : Matrix{};
  if (j.contains("n") && field<std::size_t>(j, "n") != spec.n()) throw InvalidInput("n does not match u");
  validate(spec);
  return spec;
}

GraphSpec graph_from_json(const nlohmann::json& j) {
  GraphSpec g{.n = field<std::size_t>(j, "n")};
  const auto edges = field<nlohmann::json>(j, "edges");
  if (!edges.is_array()) throw InvalidInput("\"edges\" must be an array");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) throw InvalidInput("edges are [i, j] or [i, j, w]");
    Edge edge{index_from_json(e[0], g.n, "edge endpoint"), index_from_json(e[1], g.n, "edge endpoint"), 1.0};
    if (e.size() == 3) {
      if (!e[2].is_number()) throw InvalidInput("edge weight must be a number");
      edge.w = e[2].get<double>();
    }
    g.edges.push_back(edge);
  }
  validate(g);
  return g;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  try {
    return j.get<Matrix>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("expected a matrix of numbers: ") + e.what());
  }
}

FamilyInstance instance_from_json(const nlohmann::json& j) {
  const auto family = field<std::string>(j, "family");
  if (family == "coverage") {
    auto spec = coverage_from_json(j);
    auto truth = coverage_exact_ft(spec);
    return {coverage_oracle(std::move(spec)), std::move(truth)};
  }
  if (family == "preference") return {preference_oracle(preference_from_json(j)), std::nullopt};
  if (family == "facility") return {facility_location_oracle(matrix_from_json(field<nlohmann::json>(j, "r"))), std::nullopt};
  if (family == "cut") return {graph_cut_oracle(graph_from_json(j)), std::nullopt};
  if (family == "random-sparse") {
    SparseFT truth = sparse_ft_from_json(field<nlohmann::json>(j, "spectrum"));
    auto oracle = sparse_ft_oracle(truth);
    return {std::move(oracle), std::move(truth)};
  }
  if (family == "infogain") {
    const auto k = matrix_from_json(field<nlohmann::json>(j, "covariance"));
    const auto n = k.size();
    Eigen::MatrixXd cov(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
      if (k[r].size() != n) throw InvalidInput("covariance must be square");
      for (std::size_t c = 0; c < n; ++c) cov(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = k[r][c];
    }
    return {information_gain_oracle(cov, field<double>(j, "sigma")), std::nullopt};
  }
  throw InvalidInput("unknown spec family '" + family + "'");
}

}  // namespace dssp
