#include <doctest.h>

#include "cpm/driver.hpp"
#include "cpm/errors.hpp"
#include "cpm/lp.hpp"
#include "instances.hpp"

using namespace cpm;

namespace {

const Rational h = rat(1, 2);

const SolverChoice kAll[] = {SolverChoice::kSimplex, SolverChoice::kCombinatorial, SolverChoice::kCrossCheck};

}  // namespace

TEST_CASE("solver names") {
  for (auto s : kAll) CHECK(parse_solver(to_string(s)) == s);
  CHECK_THROWS_AS(parse_solver("dual-simplex"), std::invalid_argument);
}

TEST_CASE("bowtie end to end") {
  for (auto s : kAll) {
    CAPTURE(to_string(s));
    DriverOptions o;
    o.solver = s;
    o.independent_pc_path = true;
    const auto r = run(test::bowtie(), o);
    CHECK(r.matching == std::vector<EdgeId>{0, 5, 6});
    CHECK(r.cost == 10);
    CHECK(r.perturbed_cost == rat(1347, 128));
    CHECK(r.lp_solves == 2);
    REQUIRE(r.trace.size() == 2);
    CHECK(r.trace[0].odd_cycle_count == 2);
    CHECK(r.trace[0].cuts_added == std::vector<OddSet>{{0, 1, 2}, {3, 4, 5}});
    // The final extremal dual is positive on one triangle only (the optimal
    // face is a segment; its basic ends each zero one set).
    CHECK(r.trace[1].cuts_retained == std::vector<OddSet>{{0, 1, 2}});
    CHECK(r.trace[1].lp_rows == 8);
  }
}

TEST_CASE("six-cycle end to end") {
  for (auto s : kAll) {
    DriverOptions o;
    o.solver = s;
    const auto r = run(test::six_cycle(), o);
    CHECK(r.matching == std::vector<EdgeId>{1, 3, 5});
    CHECK(r.cost == 3);
    CHECK(r.lp_solves == 1);
  }
}

TEST_CASE("single edge") {
  const auto r = run(Graph(2, {{0, 1, 7}}));
  CHECK(r.matching == std::vector<EdgeId>{0});
  CHECK(r.cost == 7);
  CHECK(r.lp_solves == 1);
  CHECK(r.trace[0].cuts_added.empty());
}

TEST_CASE("no perfect matching") {
  CHECK_THROWS_AS(run(Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})), NoPerfectMatching);
  CHECK_THROWS_AS(run(Graph(0, {})), NoPerfectMatching);
  CHECK_THROWS_AS(run(Graph(4, {})), NoPerfectMatching);
  // Two disjoint triangles: the bipartite relaxation is feasible, the cuts are not.
  Graph tri2(6, {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}, {3, 4, 0}, {4, 5, 0}, {3, 5, 0}});
  for (auto s : kAll) {
    DriverOptions o;
    o.solver = s;
    CHECK_THROWS_AS(run(tri2, o), NoPerfectMatching);
  }
}

TEST_CASE("select_old_cuts") {
  LaminarFamily f(6);
  f.insert({0, 1, 2});
  f.insert({3, 4, 5});
  DualSolution d(6);
  CHECK(select_old_cuts(f, d).empty());
  d.set_value({0, 1, 2}, 1);
  d.set_value({3, 4, 5}, rat(1, 3));
  CHECK(select_old_cuts(f, d).sorted() == f.sorted());
  d.set_value({3, 4, 5}, 0);
  CHECK(select_old_cuts(f, d).size() == 1);
}

TEST_CASE("select_new_cuts") {
  const Graph b = test::bowtie();
  CHECK(select_new_cuts(b, {h, h, h, h, h, h, 0}, LaminarFamily(6)) == std::vector<OddSet>{{0, 1, 2}, {3, 4, 5}});
  CHECK(select_new_cuts(b, {1, 0, 0, 0, 0, 1, 1}, LaminarFamily(6)).empty());

  // 0-1 matched inside the retained cut T = {0,1,2}; half cycles {2,3,4}
  // and {7,8,9}; 5-6 matched.
  Graph g(10, {{0, 1, 0}, {2, 3, 0}, {3, 4, 0}, {2, 4, 0}, {5, 6, 0}, {7, 8, 0}, {8, 9, 0}, {7, 9, 0}, {1, 2, 0}});
  const FracSolution x{1, h, h, h, 1, h, h, h, 0};
  LaminarFamily hp(10);
  hp.insert({0, 1, 2});
  CHECK(select_new_cuts(g, x, hp) == std::vector<OddSet>{{0, 1, 2, 3, 4}, {7, 8, 9}});

  LaminarFamily two(10);
  two.insert({0, 2, 7});
  CHECK_THROWS_AS(select_new_cuts(g, x, two), StructureViolation);
}

TEST_CASE("step") {
  const Graph b = test::bowtie();
  const auto pc = perturb(b.costs());
  auto s0 = DriverState::initial(b);
  CHECK(s0.fam.empty());
  auto s1 = step(b, pc, s0);
  CHECK(s1.iteration == 1);
  CHECK(s1.o == 2);
  CHECK(s1.fam.sorted() == std::vector<OddSet>{{0, 1, 2}, {3, 4, 5}});
  CHECK_FALSE(s1.done);

  DriverOptions comb;
  comb.solver = SolverChoice::kCombinatorial;
  auto c1 = step(b, pc, s0, comb);
  CHECK(c1.fam.sorted() == s1.fam.sorted());
  CHECK(c1.x == s1.x);
  CHECK(c1.gamma == s1.gamma);

  auto s2 = step(b, pc, s1);
  CHECK(s2.done);
  auto s3 = step(b, pc, s2);
  CHECK(s3.iteration == s2.iteration);
  CHECK(s3.trace.size() == s2.trace.size());
}

TEST_CASE("iteration bound") {
  // ceil((n/2) H_ceil(n/3)) + n
  CHECK(iteration_bound(2) == 1 + 2);
  CHECK(iteration_bound(6) == 5 + 6);    // 3 * 3/2 = 4.5
  CHECK(iteration_bound(12) == 13 + 12); // 6 * 25/12 = 12.5
}
