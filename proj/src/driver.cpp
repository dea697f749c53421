#include "cpm/driver.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cpm/errors.hpp"
#include "cpm/lp.hpp"
#include "cpm/support.hpp"
#include "cpm/trace.hpp"

namespace cpm {

const char* to_string(SolverChoice s) {
  switch (s) {
    case SolverChoice::kSimplex: return "simplex";
    case SolverChoice::kCombinatorial: return "combinatorial";
    case SolverChoice::kCrossCheck: return "cross-check";
  }
  return "?";
}

SolverChoice parse_solver(const std::string& name) {
  if (name == "simplex") return SolverChoice::kSimplex;
  if (name == "combinatorial") return SolverChoice::kCombinatorial;
  if (name == "cross-check") return SolverChoice::kCrossCheck;
  throw std::invalid_argument("unknown solver '" + name + "'");
}

DriverState DriverState::initial(const Graph& g) {
  DriverState s;
  s.fam = LaminarFamily(g.node_count());
  s.gamma = DualSolution(g.node_count());
  return s;
}

LaminarFamily select_old_cuts(const LaminarFamily& fam, const DualSolution& pi) {
  LaminarFamily out(fam.node_count());
  for (const auto& s : fam.sorted())
    if (pi.set(s).sign() > 0) out.insert(s);
  return out;
}

std::vector<OddSet> select_new_cuts(const Graph& g, const FracSolution& x, const LaminarFamily& h_prime) {
  const auto dec = decompose_support(x, g);
  const auto roots = h_prime.maximal_sets();
  std::vector<int> hits(roots.size(), 0);
  std::vector<OddSet> out;
  for (const auto& c : dec.odd_cycles) {
    std::vector<NodeId> nodes = c.nodes;
    std::sort(nodes.begin(), nodes.end());
    std::vector<NodeId> members = nodes;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (!roots[k].intersects(nodes)) continue;
      if (++hits[k] > 1)
        throw StructureViolation("retained cut " + roots[k].str() + " meets two odd cycles");
      members.insert(members.end(), roots[k].members().begin(), roots[k].members().end());
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() % 2 == 0)
      throw StructureViolation("new cut around cycle at node " + std::to_string(c.nodes[0] + 1) + " is even");
    out.emplace_back(std::move(members));
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (out[i].intersects(out[j]))
        throw StructureViolation("new cuts " + out[i].str() + " and " + out[j].str() + " overlap");
  for (const auto& s : out)
    for (const auto& t : h_prime.sets())
      if (s.intersects(t) && !t.subset_of(s) && !s.subset_of(t))
        throw StructureViolation("new cut " + s.str() + " crosses retained cut " + t.str());
  return out;
}

namespace {

[[noreturn]] void violation(const std::string& what, const IterationRecord& rec) {
  throw StructureViolation("iteration " + std::to_string(rec.iteration) + ": " + what, record_to_json(rec));
}

ProcedureSummary summarize(const CombinatorialResult& cr) {
  ProcedureSummary s;
  s.iterations = cr.stats.iterations;
  s.unshrinks = cr.stats.unshrinks;
  s.family_size = cr.stats.initial_family_size;
  s.q0 = cr.stats.q.empty() ? 0 : cr.stats.q.front();
  s.phase_lengths = cr.stats.phase_lengths;
  s.cases = cr.stats.cases;
  s.chosen_k = cr.chosen_k;
  s.certified = cr.certified;
  s.candidates_tried = cr.candidates_tried;
  return s;
}

}  // namespace

DriverState step(const Graph& g, const PerturbedCosts& pc, DriverState state, const DriverOptions& opts) {
  if (state.done) return state;
  const auto costs = pc.scaled_rationals();
  const int n = g.node_count();
  const auto& fam = state.fam;

  IterationRecord rec;
  rec.iteration = state.iteration + 1;
  rec.cuts_imposed = fam.sorted();
  rec.lp_rows = n + fam.size();
  if (!fam.is_laminar()) violation("cut family is not laminar or exceeds n/2 sets", rec);

  std::optional<PrimalDual> pd;
  if (opts.solver != SolverChoice::kCombinatorial) {
    pd = solve(g, costs, fam);
    rec.x = pd->x;
    rec.basis_dual = pd->dual;
  }
  if (opts.solver != SolverChoice::kSimplex) {
    CombinatorialResult cr;
    if (state.trace.empty()) {
      cr = solve_combinatorial(g, costs, LaminarFamily(n), {}, {}, DualSolution(n), opts.procedure);
    } else {
      const auto& prev = state.trace.back();
      LaminarFamily h_prime(n);
      for (const auto& s : prev.cuts_retained) h_prime.insert(s);
      cr = solve_combinatorial(g, costs, h_prime, prev.cuts_added, state.x, state.gamma, opts.procedure);
    }
    rec.procedure = summarize(cr);
    if (pd && cr.x != pd->x) {
      rec.x = pd->x;
      violation("simplex and combinatorial optima differ", rec);
    }
    rec.x = cr.x;
  }
  const auto& x = rec.x;

  if (!is_proper_half_integral(x, g)) violation("primal optimum is not proper-half-integral", rec);
  rec.odd_cycle_count = decompose_support(x, g).o();
  if (state.o >= 0 && rec.odd_cycle_count > state.o) violation("odd cycle count increased", rec);
  if (!check_degree_and_cut_feasibility(x, g, fam)) violation("primal optimum infeasible", rec);
  rec.objective_scaled = solution_cost(costs, x);
  if (pd && pd->objective != rec.objective_scaled) violation("simplex objective mismatch", rec);

  rec.dual = solve_extremal_dual(g, costs, fam, x, state.gamma);
  const auto& pi = rec.dual;
  if (!pi.feasible(g, costs, fam)) violation("extremal dual infeasible", rec);
  if (pi.objective() != rec.objective_scaled) violation("strong duality fails", rec);
  if (!complementary_slackness(g, costs, fam, x, pi)) violation("complementary slackness fails", rec);
  if (opts.check_positively_critical && !is_positively_critical(g, costs, fam, pi))
    violation("extremal dual is not positively-critical", rec);
  if (opts.independent_pc_path && pd) {
    const auto alt = make_positively_critical(g, costs, fam, state.gamma, pd->dual, pd->objective);
    rec.pc_iterations = alt.iterations;
    if (alt.iterations > fam.size()) violation("positively-critical transformation took more than |F| steps", rec);
    if (!is_positively_critical(g, costs, fam, alt.dual))
      violation("positively-critical transformation output is not positively-critical", rec);
  }

  rec.cuts_retained = select_old_cuts(fam, pi).sorted();
  LaminarFamily next(n);
  if (!is_integral(x)) {
    LaminarFamily h_prime = select_old_cuts(fam, pi);
    try {
      rec.cuts_added = select_new_cuts(g, x, h_prime);
    } catch (StructureViolation& e) {
      violation(e.what(), rec);
    }
    try {
      next = h_prime;
      for (const auto& s : rec.cuts_added) next.insert(s);
    } catch (const LaminarityViolation& e) {
      violation(e.what(), rec);
    }
  } else {
    state.done = true;
  }

  state.iteration = rec.iteration;
  state.x = x;
  state.o = rec.odd_cycle_count;
  state.gamma = pi;
  if (!state.done) state.fam = std::move(next);
  state.trace.push_back(std::move(rec));
  return state;
}

int iteration_bound(int n) {
  const int k = (n + 2) / 3;
  Rational h;
  for (int i = 1; i <= k; ++i) h += rat(1, i);
  const Rational v = rat(n, 2) * h;
  mpz_class c = v.numerator() / v.denominator();
  if (c * v.denominator() != v.numerator()) c += 1;
  return static_cast<int>(c.get_si()) + n;
}

RunResult run(const Graph& g, const DriverOptions& opts) {
  const int n = g.node_count();
  if (n == 0 || n % 2 != 0) throw NoPerfectMatching("node count " + std::to_string(n) + " is not even and positive");
  if (g.edge_count() == 0) throw NoPerfectMatching("graph has no edges");
  RunResult res;
  res.costs = perturb(g.costs());
  auto state = DriverState::initial(g);
  const int cap = 4 * iteration_bound(n) + 10;
  auto dump = [&] {
    std::ostringstream os;
    write_trace(os, make_header(g, res.costs, opts.solver), state.trace);
    return os.str();
  };
  try {
    while (!state.done) {
      if (state.iteration >= cap) throw StructureViolation("iteration cap exceeded");
      state = step(g, res.costs, std::move(state), opts);
    }
  } catch (const StructureViolation& e) {
    throw StructureViolation(e.what(), dump() + e.context + (e.context.empty() ? "" : "\n"));
  } catch (const Infeasible&) {
    // Every blossom inequality is valid for perfect matchings.
    throw NoPerfectMatching("cut LP infeasible: no perfect matching");
  } catch (const StalledNoEpsilon& e) {
    throw NoPerfectMatching(std::string("dual step unbounded: ") + e.what());
  }
  const auto& x = state.x;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (x[e].is_zero()) continue;
    res.matching.push_back(e);
    res.cost += g.edge(e).cost;
    res.perturbed_cost += res.costs.perturbed(e);
  }
  res.lp_solves = state.iteration;
  res.trace = std::move(state.trace);
  return res;
}

}  // namespace cpm
