#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpm/dual.hpp"
#include "cpm/graph.hpp"
#include "cpm/laminar.hpp"
#include "cpm/matching_comb.hpp"
#include "cpm/perturb.hpp"

namespace cpm {

enum class SolverChoice { kSimplex, kCombinatorial, kCrossCheck };

const char* to_string(SolverChoice s);
/// Throws std::invalid_argument for unknown names.
SolverChoice parse_solver(const std::string& name);

struct ProcedureSummary {
  int iterations = 0;
  int unshrinks = 0;
  int family_size = 0;
  int q0 = 0;
  std::vector<int> phase_lengths;
  std::vector<std::string> cases;
  std::vector<OddSet> chosen_k;
  bool certified = false;
  int candidates_tried = 0;
};

struct IterationRecord {
  int iteration = 0;                   // 1-based
  std::vector<OddSet> cuts_imposed;    // F, sorted by size then members
  int lp_rows = 0;
  FracSolution x;
  DualSolution dual;                   // Γ-extremal optimum of D_F
  std::optional<DualSolution> basis_dual;
  int odd_cycle_count = 0;
  std::vector<OddSet> cuts_retained;   // H'
  std::vector<OddSet> cuts_added;      // H''
  Rational objective_scaled;           // c^·x, costs scaled by 2^m
  std::optional<ProcedureSummary> procedure;
  int pc_iterations = -1;              // make_positively_critical on the basis dual, -1 if not run
};

struct DriverOptions {
  SolverChoice solver = SolverChoice::kSimplex;
  /// Factor-criticality of every positive set of each extremal dual.
  bool check_positively_critical = true;
  /// Also run make_positively_critical on the basis dual (simplex paths only).
  bool independent_pc_path = false;
  ProcedureOptions procedure;
};

struct DriverState {
  int iteration = 0;
  LaminarFamily fam;
  DualSolution gamma;
  FracSolution x;          // last primal, empty before the first step
  int o = -1;              // -1 before the first step
  bool done = false;
  std::vector<IterationRecord> trace;

  static DriverState initial(const Graph& g);
};

/// H' = sets of `fam` with positive value.
LaminarFamily select_old_cuts(const LaminarFamily& fam, const DualSolution& pi);

/// One set per odd cycle of x: the cycle's nodes plus the maximal members of
/// h_prime meeting it. Throws StructureViolation when a result is even,
/// two results overlap, a result crosses h_prime, or a member of h_prime
/// meets two cycles.
std::vector<OddSet> select_new_cuts(const Graph& g, const FracSolution& x, const LaminarFamily& h_prime);

/// One full iteration. Returns the state unchanged (with done set) once x is
/// integral.
DriverState step(const Graph& g, const PerturbedCosts& pc, DriverState state,
                 const DriverOptions& opts = {});

struct RunResult {
  std::vector<EdgeId> matching;   // ascending
  long cost = 0;                  // base cost
  Rational perturbed_cost;        // c~ of the matching
  int lp_solves = 0;
  PerturbedCosts costs;
  std::vector<IterationRecord> trace;
};

/// Whole cutting-plane run. Throws NoPerfectMatching, or StructureViolation
/// whose context holds the trace written so far.
RunResult run(const Graph& g, const DriverOptions& opts = {});

/// ceil((n/2) H_{ceil(n/3)}) + n.
int iteration_bound(int n);

}  // namespace cpm
