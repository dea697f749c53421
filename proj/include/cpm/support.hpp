#pragma once

#include <vector>

#include "cpm/graph.hpp"
#include "cpm/laminar.hpp"

namespace cpm {

struct OddCycle {
  std::vector<NodeId> nodes;  // starts at the minimum node, heads toward its smaller neighbour
  std::vector<EdgeId> edges;  // edges[i] joins nodes[i] and nodes[i+1 mod len]
};

struct SupportDecomposition {
  std::vector<EdgeId> matched_edges;  // ascending
  std::vector<OddCycle> odd_cycles;   // ascending by minimum node
  [[nodiscard]] int o() const { return static_cast<int>(odd_cycles.size()); }
};

/// Values in {0,1/2,1}; 1-edges pairwise disjoint and disjoint from the
/// 1/2-edges, which form vertex-disjoint odd cycles.
bool is_proper_half_integral(const FracSolution& x, const Graph& g);

/// Throws std::invalid_argument unless is_proper_half_integral(x, g).
SupportDecomposition decompose_support(const FracSolution& x, const Graph& g);

/// Inverse of decompose_support.
FracSolution reassemble(const SupportDecomposition& d, int edge_count);

/// x >= 0, x(δ(u)) = 1 for all u, x(δ(S)) >= 1 for all S in `fam`.
bool check_degree_and_cut_feasibility(const FracSolution& x, const Graph& g,
                                      const LaminarFamily& fam);

/// Every value is 0 or 1.
bool is_integral(const FracSolution& x);

}  // namespace cpm
