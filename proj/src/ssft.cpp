#include "dssp/ssft.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include <Eigen/Dense>

#include "dssp/errors.hpp"
#include "dssp/filtering.hpp"
#include "dssp/rng.hpp"

namespace dssp {

namespace {

constexpr double kMinFrequencyResponse = 1e-12;
constexpr std::uint64_t kLeastSquaresStream = 0x15a5;
// Fresh row batches appended after a rank-deficient fit before giving up.
constexpr int kMaxResamples = 8;

bool survives(double value, double epsilon) { return value != 0.0 && std::abs(value) >= epsilon; }

double inclusion_weight(Model model, const SubsetMask& b) {
  return (model == Model::Difference && b.cardinality() % 2 == 1) ? -1.0 : 1.0;
}

// Solves T x = r in place for every r in `rhs`, where T_jl = w_l [B_l ⊆ B_j]
// and `sets` is ordered by (cardinality, rank), which makes T lower triangular.
void solve_inclusion_system(std::span<const SubsetMask> sets, std::span<const double> weights,
                            std::initializer_list<std::vector<double>*> rhs, std::uint64_t& work) {
  for (std::size_t j = 0; j < sets.size(); ++j) {
    const auto card_j = sets[j].cardinality();
    for (std::size_t l = 0; l < j; ++l) {
      ++work;
      if (sets[l].cardinality() >= card_j || !sets[l].is_subset_of(sets[j])) continue;
      for (auto* r : rhs) (*r)[j] -= weights[l] * (*r)[l];
    }
    for (auto* r : rhs) (*r)[j] /= weights[j];
  }
}

void check_support(std::span<const SubsetMask> support, std::size_t n) {
  if (support.empty()) throw InvalidInput("known-support recovery needs a nonempty support");
  std::unordered_set<SubsetMask, SubsetMaskHash> seen;
  for (const auto& b : support) {
    if (b.n() != n) throw InvalidInput("support mask " + b.to_string() + " has wrong size");
    if (!seen.insert(b).second) throw InvalidInput("support lists " + b.to_string() + " twice");
  }
}

// Distinct uniformly random subsets of `domain` not yet in `taken`; every
// remaining subset when fewer than `count` are left.
std::vector<SubsetMask> sample_rows(const SubsetMask& domain, std::size_t count,
                                    std::unordered_set<SubsetMask, SubsetMaskHash>& taken, Rng& rng) {
  const auto elems = domain.elements();
  const auto n = domain.n();
  std::vector<SubsetMask> rows;
  if (elems.size() < 63) {
    const std::uint64_t total = std::uint64_t{1} << elems.size();
    if (total - taken.size() <= count) {
      for (std::uint64_t code = 0; code < total; ++code) {
        SubsetMask m(n);
        for (std::size_t b = 0; b < elems.size(); ++b) {
          if ((code >> b) & 1U) m.insert(elems[b]);
        }
        if (taken.insert(m).second) rows.push_back(std::move(m));
      }
      return rows;
    }
  }
  while (rows.size() < count) {
    SubsetMask m(n);
    for (auto e : elems) {
      if (rng.coin()) m.insert(e);
    }
    if (taken.insert(m).second) rows.push_back(std::move(m));
  }
  return rows;
}

// Least-squares fit of WHT coefficients on `columns` over the ground set
// `domain`: s(C) = 2^-|domain| sum_B (-1)^|C∩B| x_B for sampled C ⊆ domain.
std::vector<double> fit_walsh_coefficients(const std::function<double(const SubsetMask&)>& query,
                                           std::span<const SubsetMask> columns, const SubsetMask& domain,
                                           double oversampling, Rng& rng, std::uint64_t& work) {
  const auto cols = columns.size();
  const auto target = static_cast<std::size_t>(std::ceil(oversampling * static_cast<double>(cols)));
  std::unordered_set<SubsetMask, SubsetMaskHash> taken;
  std::vector<SubsetMask> rows = sample_rows(domain, target, taken, rng);
  std::vector<double> values;
  values.reserve(rows.size());
  for (const auto& r : rows) values.push_back(query(r));

  for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
    Eigen::MatrixXd a(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols; ++c) a(r, c) = rows[r].intersection_parity(columns[c]) ? -1.0 : 1.0;
    }
    work += static_cast<std::uint64_t>(rows.size()) * cols;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (static_cast<std::size_t>(qr.rank()) == cols) {
      const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
      const Eigen::VectorXd x = qr.solve(y);
      const double scale = std::ldexp(1.0, static_cast<int>(domain.cardinality()));
      std::vector<double> out(cols);
      for (std::size_t c = 0; c < cols; ++c) out[c] = x[static_cast<Eigen::Index>(c)] * scale;
      return out;
    }
    if (attempt < kMaxResamples) {
      auto extra = sample_rows(domain, target, taken, rng);
      for (auto& r : extra) {
        values.push_back(query(r));
        rows.push_back(std::move(r));
      }
    }
  }
  throw RecoveryFailure("least-squares system is rank deficient after resampling (" + std::to_string(cols) +
                            " unknowns, " + std::to_string(rows.size()) + " queries)",
                        std::vector<SubsetMask>(columns.begin(), columns.end()));
}

struct Node {
  SubsetMask set;
  double query = 0.0;  // models 3/4: the stored query paired with `set`
  double coef = 0.0;
};

void truncate_support(std::vector<Node>& nodes, std::size_t k_max, bool& truncated) {
  if (nodes.size() <= k_max) return;
  truncated = true;
  std::partial_sort(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(k_max), nodes.end(),
                    [](const Node& a, const Node& b) {
                      const double ma = std::abs(a.coef);
                      const double mb = std::abs(b.coef);
                      if (ma != mb) return ma > mb;
                      return lex_less(a.set, b.set);
                    });
  nodes.resize(k_max);
}

void sort_for_substitution(std::vector<Node>& nodes) {
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return CardinalityLexLess{}(a.set, b.set); });
}

std::vector<SubsetMask> sets_of(const std::vector<Node>& nodes) {
  std::vector<SubsetMask> out;
  out.reserve(nodes.size());
  for (const auto& nd : nodes) out.push_back(nd.set);
  return out;
}

SparseFT spectrum_of(const std::vector<Node>& nodes, std::size_t n, Model model) {
  std::vector<FourierEntry> entries;
  entries.reserve(nodes.size());
  for (const auto& nd : nodes) entries.push_back({nd.set, nd.coef});
  return {n, model, std::move(entries)};
}

// Models 3 and 4. Step i keeps, for each B in the support, the query paired
// with B; for model 4 that is s(M_i \ B), for model 3 s(M_i^c ∪ B). Going from
// M_{i-1} to M_i, the query for B ∪ {x_i} is the old query for B, so only the
// queries for B itself are new.
SsftReport ssft_triangular(SetFunctionOracle& s, std::size_t n, const SsftConfig& cfg) {
  const Model model = cfg.model;
  SsftReport report{.result = SparseFT(n, model)};
  report.support_sizes_per_step.reserve(n + 1);

  const SubsetMask root_query = model == Model::Union ? SubsetMask(n) : SubsetMask::full(n);
  const double root = s(root_query);
  std::vector<Node> nodes;
  if (cfg.keep_root || survives(root, cfg.epsilon)) nodes.push_back({SubsetMask(n), root, root});
  report.support_sizes_per_step.push_back(nodes.size());

  SubsetMask m_prev(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes.empty()) {
      report.support_sizes_per_step.push_back(0);
      continue;
    }
    const auto sets = sets_of(nodes);
    const auto prop = support_propagate(sets, i, m_prev, model);
    const auto k = nodes.size();

    std::vector<double> fresh(k);
    std::vector<double> weights(k);
    for (std::size_t j = 0; j < k; ++j) {
      fresh[j] = s(prop.queries[j]);
      weights[j] = inclusion_weight(model, sets[j]);
    }
    // Block system [[T, 0], [T, T]]: T a = fresh, T b = ±(stored - fresh).
    std::vector<double> without_x = fresh;
    std::vector<double> with_x(k);
    for (std::size_t j = 0; j < k; ++j) {
      with_x[j] = model == Model::Union ? nodes[j].query - fresh[j] : fresh[j] - nodes[j].query;
    }
    solve_inclusion_system(sets, weights, {&without_x, &with_x}, report.solver_work);

    std::vector<Node> next;
    next.reserve(2 * k);
    for (std::size_t j = 0; j < k; ++j) {
      if (survives(without_x[j], cfg.epsilon)) next.push_back({prop.candidates[j], fresh[j], without_x[j]});
      if (survives(with_x[j], cfg.epsilon)) next.push_back({prop.candidates[k + j], nodes[j].query, with_x[j]});
    }
    truncate_support(next, cfg.k_max, report.truncated);
    sort_for_substitution(next);
    nodes = std::move(next);
    m_prev.insert(i);
    report.support_sizes_per_step.push_back(nodes.size());
  }
  report.result = spectrum_of(nodes, n, model);
  return report;
}

SsftReport ssft_walsh(SetFunctionOracle& s, std::size_t n, const SsftConfig& cfg) {
  SsftReport report{.result = SparseFT(n, cfg.model), .seed_used = cfg.seed};
  report.support_sizes_per_step.reserve(n + 1);
  Rng rng = Rng(cfg.seed).split(kLeastSquaresStream);
  std::unordered_map<SubsetMask, double, SubsetMaskHash> cache;
  auto query = [&](const SubsetMask& a) {
    auto it = cache.find(a);
    if (it != cache.end()) return it->second;
    const double v = s(a);
    cache.emplace(a, v);
    return v;
  };

  const double root = query(SubsetMask(n));
  std::vector<Node> nodes;
  if (cfg.keep_root || survives(root, cfg.epsilon)) nodes.push_back({SubsetMask(n), 0.0, root});
  report.support_sizes_per_step.push_back(nodes.size());

  SubsetMask m_prev(n);
  for (std::size_t i = 0; i < n; ++i) {
    const SubsetMask m_cur = m_prev.with(i);
    if (nodes.empty()) {
      report.support_sizes_per_step.push_back(0);
      m_prev = m_cur;
      continue;
    }
    const auto prop = support_propagate(sets_of(nodes), i, m_prev, Model::SymmetricDifference);
    const auto coefs =
        fit_walsh_coefficients(query, prop.candidates, m_cur, cfg.ls_oversampling, rng, report.solver_work);
    std::vector<Node> next;
    for (std::size_t j = 0; j < coefs.size(); ++j) {
      if (survives(coefs[j], cfg.epsilon)) next.push_back({prop.candidates[j], 0.0, coefs[j]});
    }
    truncate_support(next, cfg.k_max, report.truncated);
    sort_for_substitution(next);
    nodes = std::move(next);
    m_prev = m_cur;
    report.support_sizes_per_step.push_back(nodes.size());
  }
  report.result = spectrum_of(nodes, n, Model::SymmetricDifference);
  return report;
}

}  // namespace

void validate(const SsftConfig& cfg) {
  if (!(cfg.epsilon >= 0.0) || !std::isfinite(cfg.epsilon)) throw InvalidInput("epsilon must be a finite value >= 0");
  if (cfg.k_max == 0) throw InvalidInput("k_max must be at least 1");
  if (!(cfg.ls_oversampling >= 1.0) || !std::isfinite(cfg.ls_oversampling)) {
    throw InvalidInput("ls_oversampling must be >= 1");
  }
}

SparseFT solve_known_support(SetFunctionOracle& s, std::span<const SubsetMask> support, Model model,
                             const KnownSupportOptions& options) {
  const auto n = s.n();
  check_support(support, n);
  std::vector<SubsetMask> sets(support.begin(), support.end());

  if (model == Model::SymmetricDifference) {
    if (!(options.ls_oversampling >= 1.0)) throw InvalidInput("ls_oversampling must be >= 1");
    Rng rng = Rng(options.seed).split(kLeastSquaresStream);
    std::uint64_t work = 0;
    auto query = [&s](const SubsetMask& a) { return s(a); };
    const auto coefs = fit_walsh_coefficients(query, sets, SubsetMask::full(n), options.ls_oversampling, rng, work);
    std::vector<FourierEntry> entries;
    for (std::size_t j = 0; j < sets.size(); ++j) entries.push_back({sets[j], coefs[j]});
    return {n, model, std::move(entries)};
  }

  std::sort(sets.begin(), sets.end(), CardinalityLexLess{});
  const auto full = SubsetMask::full(n);
  std::vector<double> x(sets.size());
  std::vector<double> weights(sets.size());
  for (std::size_t j = 0; j < sets.size(); ++j) {
    x[j] = s(model == Model::Union ? full - sets[j] : sets[j]);
    weights[j] = inclusion_weight(model, sets[j]);
  }
  std::uint64_t work = 0;
  solve_inclusion_system(sets, weights, {&x}, work);
  std::vector<FourierEntry> entries;
  for (std::size_t j = 0; j < sets.size(); ++j) entries.push_back({sets[j], x[j]});
  return {n, model, std::move(entries)};
}

Propagation support_propagate(std::span<const SubsetMask> prev, std::size_t x, const SubsetMask& m_prev, Model model) {
  const auto n = m_prev.n();
  if (x >= n) throw InvalidInput("element index out of range");
  if (m_prev.contains(x)) throw InvalidInput("element is already part of the restriction");
  for (const auto& b : prev) {
    if (b.n() != n || !b.is_subset_of(m_prev)) throw InvalidInput("support set " + b.to_string() + " leaves M");
  }
  Propagation out;
  out.candidates.reserve(2 * prev.size());
  for (const auto& b : prev) out.candidates.push_back(b);
  for (const auto& b : prev) out.candidates.push_back(b.with(x));
  if (model == Model::SymmetricDifference) return out;

  const SubsetMask m_cur = m_prev.with(x);
  const SubsetMask m_cur_complement = m_cur.complement();
  out.queries.reserve(out.candidates.size());
  for (const auto& b : out.candidates) {
    out.queries.push_back(model == Model::Union ? m_cur - b : m_cur_complement | b);
  }
  return out;
}

SsftReport ssft(SetFunctionOracle& s, std::size_t n, const SsftConfig& cfg) {
  validate(cfg);
  if (n != s.n()) throw InvalidInput("n does not match the oracle's ground set");
  const auto before = s.query_count();
  SsftReport report = cfg.model == Model::SymmetricDifference ? ssft_walsh(s, n, cfg) : ssft_triangular(s, n, cfg);
  report.queries_used = s.query_count() - before;
  return report;
}

SsftReport ssft_plus(SetFunctionOracle& s, std::size_t n, const SsftConfig& cfg) {
  validate(cfg);
  if (n != s.n()) throw InvalidInput("n does not match the oracle's ground set");
  const auto before = s.query_count();
  const OneHopFilter h = sample_one_hop(n, cfg.seed);
  FilteredOracle filtered(h, s, cfg.model);
  SsftReport report = ssft(filtered, n, cfg);

  std::vector<FourierEntry> entries;
  entries.reserve(report.result.size());
  for (const auto& e : report.result.entries()) {
    const double response = frequency_response(h, e.set, cfg.model);
    if (std::abs(response) < kMinFrequencyResponse) {
      throw DegenerateFilter("filter response vanishes at " + e.set.to_string() + "; reseed", report.result.support());
    }
    entries.push_back({e.set, e.value / response});
  }
  report.result = SparseFT(n, cfg.model, std::move(entries));
  report.queries_used = s.query_count() - before;
  report.seed_used = cfg.seed;
  return report;
}

}  // namespace dssp
