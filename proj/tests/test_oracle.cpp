#include <doctest.h>

#include <sstream>

#include "cpm/driver.hpp"
#include "cpm/errors.hpp"
#include "cpm/lp.hpp"
#include "cpm/oracle.hpp"
#include "cpm/perturb.hpp"
#include "instances.hpp"

using namespace cpm;

namespace {

Trace bowtie_trace() {
  const Graph g = test::bowtie();
  DriverOptions o;
  o.solver = SolverChoice::kCrossCheck;
  const auto r = run(g, o);
  return Trace{make_header(g, r.costs, o.solver), r.trace};
}

}  // namespace

TEST_CASE("brute-force matching") {
  const auto b = brute_force_mcpm(test::bowtie());
  CHECK(b.cost == 10);
  CHECK(b.edges == Matching{0, 5, 6});
  CHECK(brute_force_mcpm(Graph(2, {{0, 1, 9}})).cost == 9);
  CHECK_THROWS_AS(brute_force_mcpm(Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})), NoPerfectMatching);
  CHECK_THROWS_AS(brute_force_mcpm(Graph(4, {{0, 1, 1}, {0, 2, 1}})), NoPerfectMatching);
  CHECK_THROWS_AS(brute_force_mcpm(Graph(18, {{0, 1, 1}})), std::invalid_argument);
  // Two optimal matchings of cost 2: the lexicographically first wins.
  const auto tie = brute_force_mcpm(test::six_cycle());
  CHECK(tie.edges == Matching{0, 2, 4});
  CHECK(tie.cost == 3);
  // Perturbed costs break the tie the other way.
  const Graph c6 = test::six_cycle();
  const auto p = brute_force_mcpm(c6, perturb(c6.costs()).scaled_rationals());
  CHECK(p.edges == Matching{1, 3, 5});
  CHECK(p.cost == 213);
}

TEST_CASE("perfect matching enumeration") {
  CHECK(all_perfect_matchings(test::bowtie()).size() == 1);
  CHECK(all_perfect_matchings(test::six_cycle()).size() == 2);
  std::vector<Edge> k6;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) k6.push_back({i, j, 0});
  CHECK(all_perfect_matchings(Graph(6, k6)).size() == 15);
  CHECK(has_perfect_matching(test::bowtie()));
  CHECK_FALSE(has_perfect_matching(Graph(4, {{0, 1, 0}, {0, 2, 0}, {0, 3, 0}})));
}

TEST_CASE("brute-force fractional optimum") {
  const Graph b = test::bowtie();
  CHECK(brute_force_fractional_opt(b, perturb(b.costs()).scaled_rationals()) == 63);
  const Graph c6 = test::six_cycle();
  CHECK(brute_force_fractional_opt(c6, perturb(c6.costs()).scaled_rationals()) == 213);
  Graph pm(4, {{0, 1, 3}, {2, 3, 4}});
  const std::vector<Rational> pc{3, 4};
  CHECK(brute_force_fractional_opt(pm, pc) == 7);
  Graph tri(3, {{0, 1, 1}, {1, 2, 2}, {0, 2, 4}});
  const std::vector<Rational> tc{1, 2, 4};
  CHECK(brute_force_fractional_opt(tri, tc) == rat(7, 2));
}

TEST_CASE("fractional oracle agrees with the bipartite relaxation") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_instance(4 + 2 * static_cast<int>(seed % 4), 0.6, 0, 20, seed);
    const auto c = perturb(g.costs()).scaled_rationals();
    CHECK(brute_force_fractional_opt(g, c) == solve(g, c, LaminarFamily(g.node_count())).objective);
  }
}

TEST_CASE("verify a clean bowtie run") {
  const auto report = verify_trace(test::bowtie(), bowtie_trace());
  CHECK(report.ok());
  CHECK(report.find("cut_persistence") != nullptr);
  CHECK(report.str().find("FAIL") == std::string::npos);
}

TEST_CASE("verify catches a corrupted dual value") {
  auto t = bowtie_trace();
  t.records[1].dual.set_node(0, t.records[1].dual.node(0) - 1);
  const auto report = verify_trace(test::bowtie(), t);
  CHECK_FALSE(report.ok());
  const auto* cs = report.find("complementary_slackness");
  REQUIRE(cs != nullptr);
  CHECK_FALSE(cs->pass);
  CHECK(cs->witness == "iteration 2: edge 1 in support with slack 1");
}

TEST_CASE("verify catches reordered iterations") {
  auto t = bowtie_trace();
  std::swap(t.records[0], t.records[1]);
  const auto report = verify_trace(test::bowtie(), t);
  const auto* mono = report.find("o_monotonicity");
  REQUIRE(mono != nullptr);
  CHECK_FALSE(mono->pass);
  CHECK(mono->witness.find("o 0 -> 2") != std::string::npos);
}

TEST_CASE("verify catches a wrong final matching and a foreign trace") {
  auto t = bowtie_trace();
  CHECK_THROWS_AS(verify_trace(test::six_cycle(), t), SchemaMismatch);
  t.records.pop_back();
  const auto report = verify_trace(test::bowtie(), t);
  CHECK_FALSE(report.find("termination")->pass);
}

TEST_CASE("random instances") {
  const Graph k6 = random_instance(6, 1.0, 0, 0, 7);
  CHECK(k6.edge_count() == 15);
  for (const auto& e : k6.edges()) CHECK(e.cost == 0);

  const Graph a = random_instance(12, 0.4, 0, 100, 99);
  const Graph b = random_instance(12, 0.4, 0, 100, 99);
  std::ostringstream sa, sb;
  write_instance(sa, a);
  write_instance(sb, b);
  CHECK(sa.str() == sb.str());
  CHECK(has_perfect_matching(a));

  const Graph golden = read_instance_file(test::fixture("golden_4_050_42.txt"));
  std::ostringstream sg, sr;
  write_instance(sg, golden);
  write_instance(sr, random_instance(4, 0.5, 0, 100, 42));
  CHECK(sg.str() == sr.str());

  CHECK_THROWS_AS(random_instance(5, 0.5, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_instance(2, 0.5, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_instance(6, 1.5, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_instance(6, 0.0, 0, 1, 1, 16, 5), GenerationFailed);
}

TEST_CASE("nested triangle instances") {
  const Graph g = nested_triangle_instance(12, 0.3, 5);
  CHECK(g.node_count() == 12);
  CHECK(has_perfect_matching(g));
  int triangle_edges = 0;
  for (const auto& e : g.edges()) triangle_edges += e.u / 3 == e.v / 3 ? 1 : 0;
  CHECK(triangle_edges == 12);
}
