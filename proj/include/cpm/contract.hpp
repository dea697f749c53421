#pragma once

#include <map>
#include <span>
#include <vector>

#include "cpm/dual.hpp"
#include "cpm/graph.hpp"
#include "cpm/laminar.hpp"

namespace cpm {

/// Result of shrinking disjoint odd sets with respect to a dual.
///
/// Contracted nodes are numbered by the smallest original node they cover.
/// Edges inside a shrunk set disappear; every other edge survives (parallel
/// edges included) and keeps a unique pre-image.
struct Contraction {
  Graph graph;                       // edge .cost fields carry the original base cost
  std::vector<Rational> costs;       // c'(e') = c(e) - Π_S(u) for each shrunk endpoint
  std::vector<NodeId> node_image;    // original node -> contracted node
  std::vector<EdgeId> edge_image;    // original edge -> contracted edge, -1 if internal
  std::vector<EdgeId> edge_preimage; // contracted edge -> original edge
  std::vector<OddSet> shrunk;        // the contracted sets
  std::vector<int> node_set;         // contracted node -> index into shrunk, -1 for plain nodes
  LaminarFamily family;              // nonsingular images of the family
  std::map<OddSet, OddSet> set_image;

  [[nodiscard]] FracSolution image(const FracSolution& x) const;
  [[nodiscard]] DualSolution image(const DualSolution& dual) const;
  /// Original nodes represented by contracted node `v`.
  [[nodiscard]] std::vector<NodeId> preimage(NodeId v) const;
};

/// Shrinks each set of `which`. Throws std::invalid_argument if two of them
/// overlap.
Contraction contract_maximal(const Graph& g, std::span<const Rational> costs,
                             const LaminarFamily& fam, const DualSolution& dual,
                             const std::vector<OddSet>& which);

}  // namespace cpm
