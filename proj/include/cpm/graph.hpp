#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "cpm/rational.hpp"

namespace cpm {

using NodeId = int;  // 0-based internally, 1-based in files and traces
using EdgeId = int;

struct Edge {
  NodeId u;
  NodeId v;
  long cost;

  [[nodiscard]] NodeId other(NodeId w) const { return w == u ? v : u; }
};

/// Undirected multigraph. Parallel edges allowed, self-loops rejected.
class Graph {
 public:
  Graph() = default;
  /// Throws std::invalid_argument on out-of-range endpoints or self-loops.
  Graph(int n, std::vector<Edge> edges);

  [[nodiscard]] int node_count() const { return n_; }
  [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_[e]; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::span<const EdgeId> incident(NodeId v) const { return incidence_[v]; }
  [[nodiscard]] std::vector<long> costs() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
};

/// Edge-indexed vector of exact values.
using FracSolution = std::vector<Rational>;

/// Reads the `p edge <n> <m>` / `e <u> <v> <cost>` text format. Lines starting
/// with `c` are comments. Throws ParseError.
Graph read_instance(std::istream& in);
Graph read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const Graph& g);

}  // namespace cpm
