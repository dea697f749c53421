#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "cpm/errors.hpp"
#include "cpm/graph.hpp"
#include "cpm/support.hpp"
#include "instances.hpp"

using namespace cpm;

namespace {

FracSolution values(std::initializer_list<Rational> v) { return FracSolution(v); }

const Rational h = rat(1, 2);

}  // namespace

TEST_CASE("graph construction") {
  CHECK_THROWS_AS(Graph(3, {{0, 0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3, 1}}), std::invalid_argument);
  Graph g(4, {{0, 1, 2}, {0, 1, 5}, {2, 3, 1}});
  CHECK(g.edge_count() == 3);
  CHECK(g.incident(0).size() == 2);
  CHECK(g.edge(1).other(1) == 0);
  CHECK(g.costs() == std::vector<long>{2, 5, 1});
}

TEST_CASE("instance file round trip") {
  std::istringstream in("c comment\np edge 4 2\ne 1 2 7\nc between\ne 3 4 -2\n");
  const Graph g = read_instance(in);
  CHECK(g.node_count() == 4);
  CHECK(g.edge(1).u == 2);
  CHECK(g.edge(1).cost == -2);
  std::ostringstream out;
  write_instance(out, g);
  std::istringstream again(out.str());
  const Graph g2 = read_instance(again);
  CHECK(g2.edges().size() == 2);
  CHECK(g2.edge(0).cost == 7);
}

TEST_CASE("instance parse errors") {
  for (const char* text : {"", "p graph 4 1\ne 1 2 1\n", "p edge 4 2\ne 1 2 1\n", "p edge 4 1\ne 1 5 1\n",
                           "p edge 4 1\ne 1 1 1\n", "p edge 4 1\ne 1 2 x\n", "e 1 2 1\n"}) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_instance(in), ParseError);
  }
  CHECK_THROWS_AS(read_instance_file(test::fixture("malformed.txt")), ParseError);
  CHECK(read_instance_file(test::fixture("bowtie.txt")).edge_count() == 7);
}

TEST_CASE("proper half-integrality") {
  Graph single(2, {{0, 1, 3}});
  CHECK(is_proper_half_integral(values({1}), single));

  Graph c4(4, {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}, {3, 0, 0}});
  CHECK_FALSE(is_proper_half_integral(values({h, h, h, h}), c4));

  const Graph b = test::bowtie();
  CHECK(is_proper_half_integral(values({h, h, h, h, h, h, 0}), b));
  CHECK_FALSE(is_proper_half_integral(values({rat(1, 3), h, h, h, h, h, 0}), b));
  CHECK_FALSE(is_proper_half_integral(values({1, 1, 0, 0, 0, 0, 0}), b));
}

TEST_CASE("support decomposition") {
  const Graph b = test::bowtie();
  auto d = decompose_support(values({h, h, h, h, h, h, 0}), b);
  CHECK(d.o() == 2);
  CHECK(d.matched_edges.empty());
  REQUIRE(d.odd_cycles.size() == 2);
  CHECK(d.odd_cycles[0].nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(d.odd_cycles[1].nodes == std::vector<NodeId>{3, 4, 5});

  auto pm = decompose_support(values({1, 0, 0, 0, 0, 1, 1}), b);
  CHECK(pm.o() == 0);
  CHECK(pm.matched_edges == std::vector<EdgeId>{0, 5, 6});

  // Triangle plus a disjoint 1-edge on five nodes: structure only, no degree check.
  Graph t(5, {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}, {3, 4, 0}});
  auto td = decompose_support(values({h, h, h, 1}), t);
  CHECK(td.o() == 1);
  CHECK(td.matched_edges.size() == 1);

  CHECK_THROWS_AS(decompose_support(values({h, h, h, h}),
                                    Graph(4, {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}, {3, 0, 0}})),
                  std::invalid_argument);
}

TEST_CASE("cycle orientation starts at the minimum node toward its smaller neighbour") {
  Graph g(5, {{4, 2, 0}, {2, 0, 0}, {0, 3, 0}, {3, 1, 0}, {1, 4, 0}});
  auto d = decompose_support(values({h, h, h, h, h}), g);
  REQUIRE(d.o() == 1);
  CHECK(d.odd_cycles[0].nodes == std::vector<NodeId>{0, 2, 4, 1, 3});
  CHECK(d.odd_cycles[0].edges == std::vector<EdgeId>{1, 0, 4, 3, 2});
}

TEST_CASE("decompose then reassemble is the identity") {
  const Graph b = test::bowtie();
  for (const auto& x : {values({h, h, h, h, h, h, 0}), values({1, 0, 0, 0, 0, 1, 1})})
    CHECK(reassemble(decompose_support(x, b), b.edge_count()) == x);
}

TEST_CASE("degree and cut feasibility") {
  const Graph b = test::bowtie();
  const auto half = values({h, h, h, h, h, h, 0});
  const auto pm = values({1, 0, 0, 0, 0, 1, 1});
  CHECK(check_degree_and_cut_feasibility(half, b, LaminarFamily(6)));
  CHECK_FALSE(check_degree_and_cut_feasibility(half, b, insert_checked(LaminarFamily(6), {0, 1, 2})));
  LaminarFamily both(6);
  both.insert({0, 1, 2});
  both.insert({3, 4, 5});
  CHECK(check_degree_and_cut_feasibility(pm, b, both));
  CHECK_FALSE(check_degree_and_cut_feasibility(values({1, 0, 0, 0, 0, 0, 1}), b, LaminarFamily(6)));
  CHECK(is_integral(pm));
  CHECK_FALSE(is_integral(half));
}
