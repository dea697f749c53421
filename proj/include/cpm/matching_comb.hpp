#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpm/dual.hpp"
#include "cpm/graph.hpp"
#include "cpm/laminar.hpp"

namespace cpm {

using Matching = std::vector<EdgeId>;

/// Tight-edge matching covering exactly S - {u} that crosses every member of
/// `inner` (sets strictly inside S) at most once. Search is exhaustive and
/// returns the lexicographically first such matching, or nullopt.
std::optional<Matching> critical_matching(const Graph& g, const std::vector<bool>& tight,
                                          const OddSet& s, const std::vector<OddSet>& inner,
                                          NodeId u);

/// Convenience form: tightness w.r.t. `dual`, inner sets taken from `fam`.
std::optional<Matching> critical_matching(const Graph& g, std::span<const Rational> costs,
                                          const OddSet& s, const LaminarFamily& fam,
                                          const DualSolution& dual, NodeId u);

/// A critical matching exists for every u in S.
bool is_factor_critical(const Graph& g, std::span<const Rational> costs, const OddSet& s,
                        const LaminarFamily& fam, const DualSolution& dual);
bool is_factor_critical(const Graph& g, const std::vector<bool>& tight, const OddSet& s,
                        const std::vector<OddSet>& inner);

/// Every set with positive value is factor-critical w.r.t. (dual, fam).
bool is_positively_critical(const Graph& g, std::span<const Rational> costs,
                            const LaminarFamily& fam, const DualSolution& dual);

/// Values agree on every singleton and family set strictly inside S.
bool identical_inside(const DualSolution& a, const DualSolution& b, const OddSet& s,
                      const LaminarFamily& fam);

struct PositivelyCritical {
  DualSolution dual;
  int iterations = 0;
};

/// Moves `psi` towards the factor-critical dual `pi_fc` set by set until
/// every positive set is factor-critical. `optimum` is the P_F optimum; psi
/// must be feasible and attain it, otherwise PreconditionBroken.
PositivelyCritical make_positively_critical(const Graph& g, std::span<const Rational> costs,
                                            const LaminarFamily& fam, const DualSolution& pi_fc,
                                            const DualSolution& psi, const Rational& optimum);

/// max over u in S of pi_S(u) - psi_S(u).
Rational consistency_delta(const DualSolution& pi, const DualSolution& psi, const OddSet& s);

/// pi_S(u) - psi_S(u) equals the delta at every u in S carrying an x-edge of δ(S).
bool is_consistent(const Graph& g, const FracSolution& x, const DualSolution& pi,
                   const DualSolution& psi, const OddSet& s);

/// (L, K, z, Λ). Two relaxations of the textbook form are accepted: members of
/// L may sit inside a member of K (they are never uncontracted), and nodes
/// outside every set may be left exposed by z.
struct ValidConfiguration {
  LaminarFamily L;
  std::vector<OddSet> K;
  FracSolution z;
  DualSolution lambda;
};

/// Throws InvalidConfiguration naming the first failed property.
void validate_configuration(const Graph& g, std::span<const Rational> costs,
                            const ValidConfiguration& cfg);

struct ProcedureStats {
  int iterations = 0;
  int unshrinks = 0;
  std::vector<std::string> cases;     // "I(a)", "I(b)", "I(c)", "II" per iteration
  std::vector<int> q;                 // exposed + half-cycles before each iteration
  std::vector<int> phase_lengths;     // maximal runs of iterations leaving q unchanged
  int initial_family_size = 0;        // |L ∪ K| at entry
};

struct ProcedureOptions {
  /// Re-validate (A)(B)(C) after every iteration.
  bool validate_each_step = false;
};

/// Half-integral Matching Procedure. Returns a configuration whose z is
/// feasible (hence optimal) for P_L^K. Throws InvalidConfiguration on bad
/// input and StalledNoEpsilon when the dual step is unbounded.
ValidConfiguration run_half_integral_procedure(const Graph& g, std::span<const Rational> costs,
                                               ValidConfiguration cfg,
                                               ProcedureStats* stats = nullptr,
                                               const ProcedureOptions& opts = {});

/// Starting configuration for the bipartite relaxation: nothing matched,
/// Λ(v) = min over incident edges of c/2.
ValidConfiguration zero_configuration(const Graph& g, std::span<const Rational> costs);

struct CombinatorialResult {
  FracSolution x;
  ValidConfiguration final_config;
  ProcedureStats stats;
  std::vector<OddSet> chosen_k;
  bool certified = false;  // Λ >= 0 on K, so (z, Λ) certifies optimality for P_H
  int candidates_tried = 0;
};

/// Optimum of P_H for H = h_prime ∪ h_second, obtained with the procedure
/// from the previous optimum x and its extremal dual pi. Candidate K ⊆ H''
/// are tried largest first; the first certified one wins, else the cheapest
/// P_H-feasible output. Throws StructureViolation if nothing is feasible.
CombinatorialResult solve_combinatorial(const Graph& g, std::span<const Rational> costs,
                                        const LaminarFamily& h_prime,
                                        const std::vector<OddSet>& h_second,
                                        const FracSolution& x, const DualSolution& pi,
                                        const ProcedureOptions& opts = {});

}  // namespace cpm
