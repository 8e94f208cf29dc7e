#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "dssp/dense.hpp"
#include "dssp/errors.hpp"
#include "dssp/io.hpp"
#include "dssp/model.hpp"
#include "dssp/oracle.hpp"
#include "dssp/rng.hpp"
#include "dssp/sparse_ft.hpp"
#include "dssp/subset_mask.hpp"

using namespace dssp;

namespace {

SubsetMask mask(std::size_t n, std::initializer_list<std::size_t> one_based) {
  SubsetMask m(n);
  for (auto i : one_based) m.insert(i - 1);
  return m;
}

}  // namespace

TEST_CASE("ground set validation and labels") {
  CHECK_THROWS_AS(GroundSet(0), InvalidInput);
  CHECK(GroundSet(3).label(1) == "x2");
  GroundSet labeled({"a", "b"});
  CHECK(labeled.size() == 2);
  CHECK(labeled.label(0) == "a");
  CHECK_THROWS_AS(GroundSet(std::vector<std::string>{"a", "a"}), InvalidInput);
}

TEST_CASE("set algebra") {
  CHECK((mask(3, {1}) | mask(3, {3})) == mask(3, {1, 3}));
  CHECK((mask(3, {1, 2}) & mask(3, {2, 3})) == mask(3, {2}));
  CHECK((mask(3, {1, 2}) - mask(3, {2, 3})) == mask(3, {1}));
  CHECK((mask(3, {1, 2}) ^ mask(3, {2, 3})) == mask(3, {1, 3}));
  CHECK(mask(3, {2}).complement() == mask(3, {1, 3}));
  CHECK(mask(3, {1, 3}).cardinality() == 2);
  CHECK(mask(3, {1}).is_subset_of(mask(3, {1, 2})));
  CHECK_FALSE(mask(3, {1, 3}).is_subset_of(mask(3, {1, 2})));
  CHECK(mask(3, {1, 2}).intersection_parity(mask(3, {2, 3})));
  CHECK_FALSE(mask(3, {1, 2}).intersection_parity(mask(3, {1, 2})));
  CHECK(mask(4, {2, 4}).to_string() == "{2,4}");
  CHECK_THROWS_AS(mask(3, {1}) | mask(4, {1}), InvalidInput);
  CHECK_THROWS_AS(SubsetMask(3).insert(3), InvalidInput);
}

TEST_CASE("lexicographic rank") {
  const std::size_t n = 3;
  CHECK(SubsetMask(n).rank() == 0);
  CHECK(mask(n, {3}).rank() == 1);
  CHECK(mask(n, {1}).rank() == 4);
  CHECK(SubsetMask::full(n).rank() == 7);
  for (std::uint64_t r = 0; r < 8; ++r) CHECK(SubsetMask::from_rank(n, r).rank() == r);
  for (std::uint64_t r = 0; r + 1 < 32; ++r) {
    CHECK(lex_less(SubsetMask::from_rank(5, r), SubsetMask::from_rank(5, r + 1)));
    CHECK_FALSE(lex_less(SubsetMask::from_rank(5, r + 1), SubsetMask::from_rank(5, r)));
  }
  CHECK_THROWS_AS(SubsetMask(64).rank(), CapacityError);
}

TEST_CASE("multi-word masks") {
  const std::size_t n = 150;
  SubsetMask a(n);
  a.insert(0);
  a.insert(70);
  a.insert(149);
  CHECK(a.cardinality() == 3);
  CHECK(a.complement().cardinality() == n - 3);
  CHECK(a.elements() == std::vector<std::size_t>{0, 70, 149});
  SubsetMask b = SubsetMask::singleton(n, 70);
  CHECK(b.is_subset_of(a));
  CHECK(lex_less(b, a));  // a holds x_1, b does not
  CHECK(CardinalityLexLess{}(b, a));
  std::unordered_set<SubsetMask, SubsetMaskHash> set{a, b, a};
  CHECK(set.size() == 2);
}

TEST_CASE("cardinality-lex order extends inclusion") {
  const std::size_t n = 5;
  for (std::uint64_t x = 0; x < 32; ++x) {
    for (std::uint64_t y = 0; y < 32; ++y) {
      const auto a = SubsetMask::from_rank(n, x);
      const auto b = SubsetMask::from_rank(n, y);
      if (x != y && a.is_subset_of(b)) CHECK(CardinalityLexLess{}(a, b));
    }
  }
}

TEST_CASE("dense oracle and query counting") {
  auto o = oracle_from_dense(DenseSetFunction(1, {0.0, 1.0}));
  CHECK(o->eval(SubsetMask::full(1)) == 1.0);
  for (int i = 0; i < 4; ++i) (*o)(SubsetMask(1));
  CHECK(o->query_count() == 5);
  auto c = o->clone();
  CHECK(c->query_count() == 0);
  CHECK(c->eval(SubsetMask(1)) == 0.0);
  CHECK_THROWS_AS(o->eval(SubsetMask(2)), InvalidInput);

  auto cut = oracle_from_dense(DenseSetFunction(3, {0, 1, 2, 1, 1, 2, 1, 0}));
  CHECK(cut->eval(mask(3, {2})) == 2.0);
  CHECK(densify(*cut).values()[5] == 2.0);
  CHECK_THROWS_AS(DenseSetFunction(2, {1.0, 2.0}), InvalidInput);
}

TEST_CASE("sparse spectrum invariants") {
  SparseFT ft(3, Model::Union,
              {{mask(3, {1}), 2.0}, {SubsetMask(3), 1.0}, {mask(3, {1}), -2.0}, {mask(3, {2, 3}), 0.5}});
  CHECK(ft.size() == 2);
  CHECK(ft.coefficient(SubsetMask(3)) == 1.0);
  CHECK(ft.coefficient(mask(3, {1})) == 0.0);
  CHECK(ft.contains(mask(3, {2, 3})));
  CHECK_THROWS_AS(SparseFT(3, Model::Union, {{SubsetMask(4), 1.0}}), InvalidInput);
}

TEST_CASE("model ids") {
  CHECK(model_from_int(5) == Model::SymmetricDifference);
  CHECK_THROWS_AS(model_from_int(2), InvalidInput);
}

TEST_CASE("rng determinism") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform01();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK(c.below(7) < 7);
  }
  CHECK(Rng(3).split(1).next_u64() != Rng(3).split(2).next_u64());
}

TEST_CASE("sparse spectrum JSON round trip") {
  SparseFT ft(4, Model::Difference, {{SubsetMask(4), 1.5}, {mask(4, {1, 4}), -0.25}});
  const auto j = to_json(ft);
  CHECK(j.at("coefficients").at(1).at("set") == nlohmann::json({1, 4}));
  const auto back = sparse_ft_from_json(j);
  CHECK(back.size() == 2);
  CHECK(back.coefficient(mask(4, {1, 4})) == -0.25);
  CHECK(back.model() == Model::Difference);

  auto bad = j;
  bad["coefficients"].push_back({{"set", {1, 4}}, {"value", 1.0}});
  CHECK_THROWS_AS(sparse_ft_from_json(bad), InvalidInput);
  bad = j;
  bad["coefficients"][0]["set"] = {5};
  CHECK_THROWS_AS(sparse_ft_from_json(bad), InvalidInput);
  CHECK_THROWS_AS(sparse_ft_from_json(nlohmann::json::parse(R"({"n":2})")), InvalidInput);
}

TEST_CASE("dense formats round trip") {
  DenseSetFunction f(2, {0.1, -2.0, 3.0, 1e-300});
  std::stringstream csv;
  write_dense_csv(csv, f);
  CHECK(csv.str().rfind("rank,value\n", 0) == 0);
  const auto g = read_dense_csv(csv);
  CHECK(std::equal(g.values().begin(), g.values().end(), f.values().begin()));

  std::stringstream bin;
  write_dense_binary(bin, f);
  CHECK(bin.str().size() == 8 + 4 * 8);
  const auto h = read_dense_binary(bin);
  CHECK(std::equal(h.values().begin(), h.values().end(), f.values().begin()));

  std::stringstream three("rank,value\n0,1\n1,2\n2,3\n");
  CHECK_THROWS_AS(read_dense_csv(three), InvalidInput);
}
