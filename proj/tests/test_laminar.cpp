#include <doctest.h>

#include <stdexcept>

#include "cpm/contract.hpp"
#include "cpm/errors.hpp"
#include "cpm/laminar.hpp"
#include "instances.hpp"

using namespace cpm;

TEST_CASE("odd set invariants") {
  CHECK_THROWS_AS(OddSet({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(OddSet({0, 1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(OddSet({0}), std::invalid_argument);
  const OddSet s{4, 0, 2};
  CHECK(s.members() == std::vector<NodeId>{0, 2, 4});
  CHECK(s.str() == "{1,3,5}");
  CHECK(s.crosses({0, 1, 0}));
  CHECK_FALSE(s.crosses({0, 2, 0}));
  CHECK(OddSet({0, 1, 2}).subset_of(OddSet({0, 1, 2, 3, 4})));
}

TEST_CASE("insert_checked") {
  LaminarFamily f(8);
  f = insert_checked(f, {0, 1, 2});
  CHECK(f.size() == 1);
  f = insert_checked(f, {0, 1, 2, 3, 4});
  CHECK(f.size() == 2);
  CHECK(f.parent(*f.index_of({0, 1, 2})) == *f.index_of({0, 1, 2, 3, 4}));
  CHECK_THROWS_AS(insert_checked(insert_checked(LaminarFamily(8), {0, 1, 2}), {2, 3, 4}), LaminarityViolation);
  f.insert({0, 1, 2});
  CHECK(f.size() == 2);
}

TEST_CASE("size bounds") {
  // More than n - 3 members.
  CHECK_THROWS_AS(insert_checked(LaminarFamily(6), {0, 1, 2, 3, 4}), LaminarityViolation);
  CHECK_THROWS_AS(insert_checked(LaminarFamily(6), {0, 1, 7}), LaminarityViolation);
  LaminarFamily f(6);
  f.insert({0, 1, 2});
  f.insert({3, 4, 5});
  CHECK(f.is_laminar());
  LaminarFamily g(8);
  g.insert({0, 1, 2});
  g.insert({0, 1, 2, 3, 4});
  g.insert({5, 6, 7});
  CHECK(g.is_laminar());
  CHECK_THROWS_AS(g.insert({0, 1, 2, 3, 4, 5, 6}), LaminarityViolation);
  CHECK(g.size() == 3);
  LaminarFamily unbounded(8, false);
  unbounded.insert({0, 1, 2, 3, 4, 5, 6});
  CHECK(unbounded.size() == 1);
}

TEST_CASE("maximal_sets_intersecting") {
  LaminarFamily f(10);
  f.insert({0, 1, 2});
  f.insert({0, 1, 2, 3, 4});
  CHECK(f.maximal_sets_intersecting({4, 5}) == std::vector<OddSet>{{0, 1, 2, 3, 4}});
  CHECK(LaminarFamily(10).maximal_sets_intersecting({0, 1}).empty());
  LaminarFamily g(10);
  g.insert({0, 1, 2});
  g.insert({6, 7, 8});
  CHECK(g.maximal_sets_intersecting({2, 6}).size() == 2);
  CHECK(g.maximal_sets_intersecting({3, 4}).empty());
}

TEST_CASE("sorted order is by size then members") {
  LaminarFamily f(12);
  f.insert({0, 1, 2, 3, 4});
  f.insert({6, 7, 8});
  f.insert({0, 1, 2});
  const auto s = f.sorted();
  REQUIRE(s.size() == 3);
  CHECK(s[0] == OddSet{0, 1, 2});
  CHECK(s[1] == OddSet{6, 7, 8});
  CHECK(s[2] == OddSet{0, 1, 2, 3, 4});
  CHECK(f.strict_subsets_of({0, 1, 2, 3, 4}) == std::vector<OddSet>{{0, 1, 2}});
}

TEST_CASE("contract both bowtie triangles") {
  const Graph b = test::bowtie();
  const std::vector<Rational> c{0, 0, 0, 0, 0, 0, 10};
  LaminarFamily f(6);
  f.insert({0, 1, 2});
  f.insert({3, 4, 5});
  DualSolution d(6);
  d.set_node(2, rat(3));
  d.set_node(3, rat(1, 2));
  const auto k = contract_maximal(b, c, f, d, f.sets());
  CHECK(k.graph.node_count() == 2);
  REQUIRE(k.graph.edge_count() == 1);
  CHECK(k.edge_preimage[0] == 6);
  CHECK(k.costs[0] == rat(10) - rat(3) - rat(1, 2));
  CHECK(k.edge_image == std::vector<EdgeId>{-1, -1, -1, -1, -1, -1, 0});
  CHECK(k.preimage(1) == std::vector<NodeId>{3, 4, 5});
  CHECK(k.family.empty());
}

TEST_CASE("contract nothing is the identity") {
  const Graph b = test::bowtie();
  const std::vector<Rational> c{1, 2, 3, 4, 5, 6, 7};
  const auto k = contract_maximal(b, c, LaminarFamily(6), DualSolution(6), {});
  CHECK(k.graph.node_count() == 6);
  CHECK(k.graph.edge_count() == 7);
  for (EdgeId e = 0; e < 7; ++e) {
    CHECK(k.edge_image[e] == e);
    CHECK(k.costs[e] == c[e]);
  }
}

TEST_CASE("contracting the outer set drops the inner one") {
  Graph g(8, {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}, {2, 3, 0}, {3, 4, 0}, {4, 0, 0}, {4, 5, 1}, {5, 6, 0}, {6, 7, 0}});
  const std::vector<Rational> c(9, Rational(1));
  LaminarFamily f(8);
  f.insert({0, 1, 2});
  f.insert({0, 1, 2, 3, 4});
  const auto k = contract_maximal(g, c, f, DualSolution(8), {OddSet{0, 1, 2, 3, 4}});
  CHECK(k.graph.node_count() == 4);
  CHECK(k.family.empty());
  // Every surviving edge maps back to a unique original edge.
  for (EdgeId e = 0; e < k.graph.edge_count(); ++e) CHECK(k.edge_image[k.edge_preimage[e]] == e);
  CHECK_THROWS_AS(contract_maximal(g, c, f, DualSolution(8), f.sets()), std::invalid_argument);
}
