#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cpm/graph.hpp"
#include "cpm/laminar.hpp"
#include "cpm/rational.hpp"

namespace cpm {

/// Dual values on singletons and odd sets. Sets absent from the map are zero.
class DualSolution {
 public:
  DualSolution() = default;
  explicit DualSolution(int n) : node_(n) {}

  [[nodiscard]] int node_count() const { return static_cast<int>(node_.size()); }
  [[nodiscard]] const Rational& node(NodeId v) const { return node_[v]; }
  void set_node(NodeId v, Rational val) { node_[v] = std::move(val); }
  [[nodiscard]] Rational set(const OddSet& s) const;
  /// Stores the value; zero erases the entry.
  void set_value(const OddSet& s, Rational val);
  [[nodiscard]] const std::map<OddSet, Rational>& set_values() const { return sets_; }
  /// Sets with nonzero value.
  [[nodiscard]] std::vector<OddSet> support_sets() const;

  /// Sum of values over every singleton or set crossed by `e`.
  [[nodiscard]] Rational edge_load(const Edge& e) const;
  [[nodiscard]] Rational slack(const Graph& g, std::span<const Rational> costs, EdgeId e) const {
    return costs[e] - edge_load(g.edge(e));
  }
  [[nodiscard]] std::vector<bool> tight_edges(const Graph& g, std::span<const Rational> costs) const;
  /// Sum of values over singletons and sets strictly inside `s` that contain `u`.
  [[nodiscard]] Rational inner(const OddSet& s, NodeId u) const;
  [[nodiscard]] Rational objective() const;

  /// Edge constraints hold, set values are nonnegative and supported on `fam`.
  [[nodiscard]] bool feasible(const Graph& g, std::span<const Rational> costs,
                              const LaminarFamily& fam) const;

  /// 1-based text, one entry per line ("v 3 1/2", "S {1,2,3} 5").
  [[nodiscard]] std::string str() const;

  friend bool operator==(const DualSolution&, const DualSolution&) = default;

 private:
  std::vector<Rational> node_;
  std::map<OddSet, Rational> sets_;
};

/// Exact x(δ(s)).
Rational cut_value(const Graph& g, const FracSolution& x, const OddSet& s);
/// Exact Σ costs·x.
Rational solution_cost(std::span<const Rational> costs, const FracSolution& x);

}  // namespace cpm
