#include <doctest.h>

#include <cmath>

#include "dssp/errors.hpp"
#include "dssp/generators.hpp"
#include "dssp/rng.hpp"
#include "dssp/transforms.hpp"
#include "oracles.hpp"

using namespace dssp;

namespace {

SubsetMask mask(std::size_t n, std::initializer_list<std::size_t> one_based) {
  SubsetMask m(n);
  for (auto i : one_based) m.insert(i - 1);
  return m;
}

std::size_t nonzeros(const DenseSetFunction& f, double tol) {
  std::size_t count = 0;
  for (double v : f.values()) count += std::abs(v) > tol;
  return count;
}

// Union weight by explicit membership scan, independent of the mask algebra.
double union_weight(const CoverageSpec& spec, const SubsetMask& a) {
  double total = 0.0;
  for (std::size_t u = 0; u < spec.universe_size; ++u) {
    bool covered = false;
    for (std::size_t i = 0; i < spec.n(); ++i) covered = covered || (a.contains(i) && spec.membership[i].contains(u));
    if (covered) total += spec.weights[u];
  }
  return total;
}

}  // namespace

TEST_CASE("all-cover-one coverage") {
  const auto spec = all_cover_one(3);
  auto s = coverage_oracle(spec);
  CHECK(s->eval(SubsetMask(3)) == 0.0);
  for (std::uint64_t r = 1; r < 8; ++r) CHECK(s->eval(SubsetMask::from_rank(3, r)) == 1.0);
  const auto ft = coverage_exact_ft(spec);
  CHECK(ft.size() == 2);
  CHECK(ft.coefficient(SubsetMask(3)) == 1.0);
  CHECK(ft.coefficient(SubsetMask::full(3)) == -1.0);
}

TEST_CASE("disjoint coverage is modular") {
  CoverageSpec spec{.universe_size = 6};
  for (std::size_t i = 0; i < 3; ++i) spec.membership.push_back(SubsetMask::from_indices(6, std::vector<std::size_t>{2 * i, 2 * i + 1}));
  spec.weights = {1, 2, 3, 4, 5, 6};
  auto s = coverage_oracle(spec);
  CHECK(s->eval(mask(3, {1, 3})) == 3.0 + 11.0);
  const auto ft = coverage_exact_ft(spec);
  for (const auto& e : ft.entries()) CHECK(e.set.cardinality() <= 1);
}

TEST_CASE("coverage oracle and exact spectrum match references") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 3 + seed % 6;
    const auto spec = random_coverage(n, 12, 0.3, seed);
    auto s = coverage_oracle(spec);
    const auto dense = densify(*s);
    for (std::uint64_t r = 0; r < dense.size(); ++r) {
      CHECK(dense[r] == doctest::Approx(union_weight(spec, SubsetMask::from_rank(n, r))));
    }
    const auto expected = dense_ft(dense, Model::Union);
    const auto exact = to_dense_coefficients(coverage_exact_ft(spec));
    for (std::uint64_t r = 0; r < dense.size(); ++r) CHECK(std::abs(exact[r] - expected[r]) < 1e-9);
  }
}

TEST_CASE("coverage spec validation") {
  CoverageSpec spec = all_cover_one(3);
  spec.membership[1] = spec.membership[0];
  CHECK_THROWS_AS(coverage_oracle(spec), InvalidInput);
  spec = all_cover_one(3);
  spec.weights.pop_back();
  CHECK_THROWS_AS(coverage_exact_ft(spec), InvalidInput);
}

TEST_CASE("preference functions") {
  PreferenceSpec modular{.u = {1.0, 2.0, 4.0}};
  auto s = preference_oracle(modular);
  CHECK(s->eval(mask(3, {1, 3})) == 5.0);

  // a = 0 and u = Σ_ℓ r_ℓ· leaves the facility-location term.
  PreferenceSpec single{.u = {0.3, 0.9, 0.5}, .r = {{0.3, 0.9, 0.5}}};
  auto p = preference_oracle(single);
  CHECK(p->eval(mask(3, {1, 3})) == doctest::Approx(0.5));
  CHECK(p->eval(SubsetMask(3)) == 0.0);

  PreferenceSpec bad{.u = {1.0}, .r = {{-1.0}}};
  CHECK_THROWS_AS(preference_oracle(bad), InvalidInput);
}

TEST_CASE("preference sparsity bound and WHT density") {
  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::size_t l = 0; l <= 2; ++l) {
      for (std::size_t k = 0; k <= 2; ++k) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
          auto s = preference_oracle(random_preference(n, l, k, seed));
          const auto dense = densify(*s);
          CHECK(nonzeros(dense_ft(dense, Model::Union), 1e-9) <= 1 + n + l * n + k * n);
          if (l + k >= 1) CHECK(nonzeros(dense_ft(dense, Model::SymmetricDifference), 1e-9) > (std::size_t{1} << (n - 1)));
        }
      }
    }
  }
}

TEST_CASE("facility location") {
  auto s = facility_location_oracle({{0.2, 0.7, 0.1}});
  CHECK(s->eval(mask(3, {2})) == 0.7);
  CHECK(s->eval(SubsetMask(3)) == 0.0);
  CHECK_THROWS_AS(facility_location_oracle({{0.1, -0.2}}), InvalidInput);

  const auto r = random_facility(5, 8, 1.0, 3);
  auto f = facility_location_oracle(r);
  auto p = preference_oracle(facility_as_preference(r));
  for (std::uint64_t code = 0; code < 256; ++code) {
    const auto a = SubsetMask::from_rank(8, code);
    double direct = 0.0;
    for (const auto& row : r) {
      double best = 0.0;
      for (std::size_t i = 0; i < 8; ++i) {
        if (a.contains(i)) best = std::max(best, row[i]);
      }
      direct += best;
    }
    CHECK(f->eval(a) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(p->eval(a) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("graph cuts") {
  auto path = graph_cut_oracle(path_graph(3));
  const std::vector<double> expected{0, 1, 2, 1, 1, 2, 1, 0};
  const auto dense = densify(*path);
  CHECK(std::vector<double>(dense.values().begin(), dense.values().end()) == expected);

  GraphSpec g{.n = 7};
  Rng rng(8);
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = i + 1; j < 7; ++j) {
      if (rng.coin()) g.edges.push_back({i, j, rng.uniform01()});
    }
  }
  auto cut = graph_cut_oracle(g);
  for (std::uint64_t r = 0; r < 128; ++r) {
    const auto a = SubsetMask::from_rank(7, r);
    CHECK(cut->eval(a) == doctest::Approx(cut->eval(a.complement())));
  }
  CHECK(cut->eval(SubsetMask::full(7)) == 0.0);
  CHECK_THROWS_AS(graph_cut_oracle(GraphSpec{.n = 2, .edges = {{0, 0, 1.0}}}), InvalidInput);
  CHECK_THROWS_AS(graph_cut_oracle(GraphSpec{.n = 2, .edges = {{0, 1, 1.0}, {1, 0, 1.0}}}), InvalidInput);
}

TEST_CASE("random sparse instances") {
  auto one = random_sparse_oracle(5, 1, Model::Union, CoeffDistribution::Normal, 4);
  const auto& e = one.truth.entries()[0];
  for (std::uint64_t r = 0; r < 32; ++r) {
    const auto a = SubsetMask::from_rank(5, r);
    CHECK(one.oracle->eval(a) == (a.intersects(e.set) ? 0.0 : e.value));
  }
  for (auto model : {Model::Difference, Model::Union, Model::SymmetricDifference}) {
    auto inst = random_sparse_oracle(7, 10, model, CoeffDistribution::Uniform, 9);
    CHECK(inst.truth.size() == 10);
    const auto ft = dense_ft(densify(*inst.oracle), model);
    const auto truth = to_dense_coefficients(inst.truth);
    for (std::uint64_t r = 0; r < ft.size(); ++r) CHECK(std::abs(ft[r] - truth[r]) < 1e-9);
  }
  auto full = random_sparse_oracle(3, 8, Model::Union, CoeffDistribution::Normal, 1);
  CHECK(full.truth.size() == 8);
  CHECK_THROWS_AS(random_sparse_oracle(3, 9, Model::Union, CoeffDistribution::Normal, 1), InvalidInput);
}

TEST_CASE("information gain") {
  auto id = information_gain_oracle(Eigen::MatrixXd::Identity(4, 4), 1.0);
  CHECK(id->eval(SubsetMask(4)) == 0.0);
  CHECK(id->eval(mask(4, {1, 3, 4})) == doctest::Approx(3 * 0.5 * std::log(2.0)));

  const auto k = random_covariance(6, 2);
  auto g = information_gain_oracle(k, 0.7);
  for (std::uint64_t r = 0; r < 64; ++r) {
    const auto a = SubsetMask::from_rank(6, r);
    const auto idx = a.elements();
    Eigen::MatrixXd sub = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t x = 0; x < idx.size(); ++x) {
      for (std::size_t y = 0; y < idx.size(); ++y) {
        sub(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) += k(static_cast<Eigen::Index>(idx[x]), static_cast<Eigen::Index>(idx[y])) / 0.49;
      }
    }
    const double direct = idx.empty() ? 0.0 : 0.5 * std::log(sub.determinant());
    CHECK(g->eval(a) == doctest::Approx(direct).epsilon(1e-9));
  }

  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(3, 3);
  bad(0, 0) = -1.0;
  CHECK_THROWS_AS(information_gain_oracle(bad, 1.0), InvalidInput);
  CHECK_THROWS_AS(information_gain_oracle(Eigen::MatrixXd::Identity(3, 3), 0.0), InvalidInput);
}

TEST_CASE("information gain is monotone and submodular") {
  const std::size_t n = 6;
  auto g = information_gain_oracle(random_covariance(n, 5), 1.0);
  const auto dense = densify(*g);
  for (std::uint64_t a = 0; a < 64; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t xi = oracles::bit(n, i);
      if (a & xi) continue;
      CHECK(dense[a | xi] >= dense[a] - 1e-12);
      for (std::uint64_t b = a; b < 64; ++b) {
        if ((b & a) != a || (b & xi)) continue;
        CHECK(dense[a | xi] - dense[a] >= dense[b | xi] - dense[b] - 1e-9);
      }
    }
  }
}

TEST_CASE("spec documents round trip") {
  const auto cover = random_coverage(5, 9, 0.4, 1);
  auto inst = instance_from_json(to_json(cover));
  REQUIRE(inst.truth.has_value());
  auto direct = coverage_oracle(cover);
  for (std::uint64_t r = 0; r < 32; ++r) {
    CHECK(inst.oracle->eval(SubsetMask::from_rank(5, r)) == direct->eval(SubsetMask::from_rank(5, r)));
  }

  const auto pref = random_preference(4, 2, 1, 2);
  auto pi = instance_from_json(to_json(pref));
  auto pd = preference_oracle(pref);
  CHECK(pi.oracle->eval(mask(4, {2, 3})) == pd->eval(mask(4, {2, 3})));

  auto gi = instance_from_json(to_json(path_graph(3)));
  CHECK(gi.oracle->eval(mask(3, {2})) == 2.0);

  CHECK_THROWS_AS(instance_from_json(nlohmann::json{{"family", "nope"}}), InvalidInput);
  CHECK_THROWS_AS(instance_from_json(nlohmann::json{{"family", "cut"}, {"n", 3}, {"edges", {{1, 4}}}}), InvalidInput);
}
