#include <doctest.h>

#include "dssp/errors.hpp"
#include "dssp/generators.hpp"
#include "dssp/rng.hpp"
#include "dssp/transforms.hpp"
#include "oracles.hpp"

using namespace dssp;

namespace {

constexpr Model kModels[] = {Model::Difference, Model::Union, Model::SymmetricDifference};

std::vector<double> random_values(std::size_t n, Rng& rng) {
  std::vector<double> v(std::size_t{1} << n);
  for (auto& x : v) x = rng.normal();
  return v;
}

std::vector<double> values_of(const DenseSetFunction& f) { return {f.values().begin(), f.values().end()}; }

SubsetMask mask(std::size_t n, std::initializer_list<std::size_t> one_based) {
  SubsetMask m(n);
  for (auto i : one_based) m.insert(i - 1);
  return m;
}

}  // namespace

TEST_CASE("two-point transforms") {
  CHECK(values_of(dense_ft(DenseSetFunction(1, {2.0, 5.0}), Model::Union)) == std::vector<double>{5.0, -3.0});
  CHECK(values_of(dense_ft(DenseSetFunction(1, {2.0, 5.0}), Model::Difference)) == std::vector<double>{2.0, -3.0});
  CHECK(values_of(dense_ft(DenseSetFunction(1, {2.0, 5.0}), Model::SymmetricDifference)) ==
        std::vector<double>{7.0, -3.0});
}

TEST_CASE("path cut spectrum and inverse") {
  const std::vector<double> cut{0, 1, 2, 1, 1, 2, 1, 0};
  const std::vector<double> hat{0, 1, 2, -2, 1, 0, -2, 0};
  CHECK(values_of(dense_ft(DenseSetFunction(3, cut), Model::Union)) == hat);
  CHECK(values_of(dense_ift(DenseSetFunction(3, hat), Model::Union)) == cut);
}

TEST_CASE("all-cover-one coverage spectra") {
  const std::size_t n = 3;
  std::vector<double> s(8, 1.0);
  s[0] = 0.0;
  const auto wht = values_of(dense_ft(DenseSetFunction(n, s), Model::SymmetricDifference));
  CHECK(wht[0] == 7.0);
  for (std::size_t b = 1; b < 8; ++b) CHECK(wht[b] == -1.0);

  std::vector<double> hat(8, 0.0);
  hat[0] = 1.0;
  hat[7] = -1.0;
  CHECK(values_of(dense_ift(DenseSetFunction(n, hat), Model::Union)) == s);
  CHECK(values_of(dense_ift(DenseSetFunction::zeros(n), Model::Union)) == std::vector<double>(8, 0.0));
}

TEST_CASE("dense transforms match Kronecker matrices") {
  Rng rng(11);
  for (auto model : kModels) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto s = random_values(n, rng);
      const auto fast = values_of(dense_ft(DenseSetFunction(n, s), model));
      CHECK(oracles::max_abs_diff(fast, oracles::apply(oracles::kronecker_matrix(model, n), s)) < 1e-9);
      const auto back = values_of(dense_ift(DenseSetFunction(n, s), model));
      CHECK(oracles::max_abs_diff(back, oracles::apply(oracles::kronecker_matrix(model, n, true), s)) < 1e-9);
      CHECK(oracles::max_abs_diff(back, oracles::inverse(model, n, s)) < 1e-9);
    }
  }
}

TEST_CASE("round trip and butterfly count") {
  Rng rng(5);
  for (auto model : kModels) {
    for (std::size_t n = 1; n <= 10; ++n) {
      const auto s = random_values(n, rng);
      TransformStats fwd;
      TransformStats inv;
      const auto back = values_of(dense_ift(dense_ft(DenseSetFunction(n, s), model, &fwd), model, &inv));
      CHECK(oracles::max_abs_diff(back, s) <= 1e-9 * std::max(1.0, oracles::max_abs(s)));
      CHECK(fwd.butterflies == n * (std::uint64_t{1} << (n - 1)));
      CHECK(inv.butterflies == fwd.butterflies);
    }
  }
}

TEST_CASE("capacity error for huge n") { CHECK_THROWS_AS(DenseSetFunction::zeros(70), CapacityError); }

TEST_CASE("eval_sparse agrees with dense inverse") {
  CHECK(eval_sparse(SparseFT(3, Model::Union, {{SubsetMask(3), 1.0}, {SubsetMask::full(3), -1.0}}), mask(3, {1})) ==
        1.0);
  CHECK(eval_sparse(SparseFT(3, Model::Union), mask(3, {1})) == 0.0);
  for (auto model : kModels) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const std::size_t n = 7;
      auto inst = random_sparse_oracle(n, 12, model, CoeffDistribution::Normal, seed);
      const auto dense = values_of(to_dense_coefficients(inst.truth));
      const auto s = oracles::inverse(model, n, dense);
      for (std::uint64_t a = 0; a < s.size(); ++a) {
        CHECK(eval_sparse(inst.truth, SubsetMask::from_rank(n, a)) == doctest::Approx(s[a]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("restriction of the path cut") {
  const SparseFT hat = to_sparse(DenseSetFunction(3, {0, 1, 2, -2, 1, 0, -2, 0}), Model::Union);
  CHECK(restrict_ft(hat, SubsetMask(3), Model::Union).empty());
  const auto r1 = restrict_ft(hat, mask(3, {1}), Model::Union);
  CHECK(r1.size() == 2);
  CHECK(r1.coefficient(SubsetMask(3)) == 1.0);
  CHECK(r1.coefficient(mask(3, {1})) == -1.0);
  const auto full = restrict_ft(hat, SubsetMask::full(3), Model::Union);
  CHECK(full.size() == hat.size());
  CHECK_THROWS_AS(restrict_ft(hat, SubsetMask::full(3), Model::Difference), InvalidInput);
}

TEST_CASE("restriction matches the restricted function") {
  const std::size_t n = 8;
  Rng pick(99);
  for (auto model : kModels) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      auto inst = random_sparse_oracle(n, 20, model, CoeffDistribution::Normal, seed);
      SubsetMask m(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (pick.coin()) m.insert(i);
      }
      const auto r = restrict_ft(inst.truth, m, model);
      CHECK(r.domain() == m);
      const auto outside = m.complement();
      // Every C ⊆ M: enumerate via submask iteration over M's bits.
      const auto elems = m.elements();
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << elems.size()); ++code) {
        SubsetMask c(n);
        for (std::size_t b = 0; b < elems.size(); ++b) {
          if ((code >> b) & 1U) c.insert(elems[b]);
        }
        const double expected = eval_sparse(inst.truth, model == Model::Difference ? (outside | c) : c);
        CHECK(eval_sparse(r, c) == doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }
}
