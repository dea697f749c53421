#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cpm/graph.hpp"
#include "cpm/matching_comb.hpp"
#include "cpm/trace.hpp"

namespace cpm {

inline constexpr int kOracleNodeLimit = 16;
inline constexpr int kFractionalNodeLimit = 12;

template <typename Cost>
struct OracleMatching {
  Matching edges;  // ascending
  Cost cost{};
};

/// Exhaustive minimum-cost perfect matching. Pairs the lowest unmatched node
/// first; equal costs keep the lexicographically smaller edge list. Throws
/// NoPerfectMatching, or std::invalid_argument above `limit` nodes.
OracleMatching<long> brute_force_mcpm(const Graph& g, int limit = kOracleNodeLimit);
OracleMatching<Rational> brute_force_mcpm(const Graph& g, std::span<const Rational> costs,
                                          int limit = kOracleNodeLimit);

/// Every perfect matching, in enumeration order.
std::vector<Matching> all_perfect_matchings(const Graph& g, int limit = 10);

bool has_perfect_matching(const Graph& g);

/// Minimum cost over degree-feasible vectors whose support is disjoint edges
/// (value 1) and odd cycles (value 1/2). Throws NoPerfectMatching when no
/// such vector exists.
Rational brute_force_fractional_opt(const Graph& g, std::span<const Rational> costs,
                                    int limit = kFractionalNodeLimit);

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;  // first offending iteration, set, node or edge
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  [[nodiscard]] bool ok() const;
  [[nodiscard]] const CheckResult* find(const std::string& name) const;
  /// One "PASS name" / "FAIL name: witness" line per check.
  [[nodiscard]] std::string str() const;
};

struct VerifyOptions {
  /// Re-solve every P_F and D*_F and compare with the recorded values.
  bool replay = true;
  int oracle_limit = kOracleNodeLimit;
};

/// Replays the invariant suite over a recorded run. Throws SchemaMismatch
/// when the trace does not describe `g`.
VerifyReport verify_trace(const Graph& g, const Trace& trace, const VerifyOptions& opts = {});

/// Edges (i, j), i < j, each present with probability p, cost uniform in
/// [lo, hi]. Redrawn until a perfect matching exists. Throws
/// std::invalid_argument on bad parameters and GenerationFailed after
/// `retries` draws.
Graph random_instance(int n, double p, long lo, long hi, std::uint64_t seed,
                      int limit = kOracleNodeLimit, int retries = 1000);

/// Nodes grouped in consecutive triples, triples in consecutive groups of
/// three. Triples are complete with cost 0 or 1; other pairs appear with
/// probability p, costing 4..7 inside a group and 16..23 across groups.
/// These need several cut rounds where uniform instances rarely need two.
Graph nested_triangle_instance(int n, double p, std::uint64_t seed, int retries = 1000);

}  // namespace cpm
