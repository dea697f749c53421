#include "cpm/support.hpp"

#include <algorithm>
#include <stdexcept>

#include "cpm/dual.hpp"

namespace cpm {

namespace {

const Rational kHalf = rat(1, 2);

// Splits the support into 1-edges and per-node half-edge lists. False when the
// local structure already rules out proper-half-integrality.
bool classify(const FracSolution& x, const Graph& g, std::vector<std::vector<EdgeId>>& half,
              std::vector<EdgeId>& ones) {
  if (static_cast<int>(x.size()) != g.edge_count()) return false;
  const int n = g.node_count();
  half.assign(n, {});
  std::vector<int> one_deg(n, 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& val = x[e];
    if (val.is_zero()) continue;
    const auto& ed = g.edge(e);
    if (val == Rational(1)) {
      ones.push_back(e);
      ++one_deg[ed.u];
      ++one_deg[ed.v];
    } else if (val == kHalf) {
      half[ed.u].push_back(e);
      half[ed.v].push_back(e);
    } else {
      return false;
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (one_deg[v] > 1 || (one_deg[v] == 1 && !half[v].empty())) return false;
    if (!half[v].empty() && half[v].size() != 2) return false;
  }
  return true;
}

// Walks the cycle through `start`; assumes every half-degree is 2.
OddCycle trace_cycle(const Graph& g, const std::vector<std::vector<EdgeId>>& half, NodeId start) {
  const EdgeId a = half[start][0];
  const EdgeId b = half[start][1];
  NodeId na = g.edge(a).other(start);
  NodeId nb = g.edge(b).other(start);
  EdgeId first = (na < nb || (na == nb && a < b)) ? a : b;

  OddCycle c;
  NodeId cur = start;
  EdgeId via = first;
  do {
    c.nodes.push_back(cur);
    c.edges.push_back(via);
    cur = g.edge(via).other(cur);
    via = half[cur][0] == via ? half[cur][1] : half[cur][0];
  } while (cur != start);
  return c;
}

}  // namespace

bool is_proper_half_integral(const FracSolution& x, const Graph& g) {
  std::vector<std::vector<EdgeId>> half;
  std::vector<EdgeId> ones;
  if (!classify(x, g, half, ones)) return false;
  std::vector<bool> seen(g.node_count(), false);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (half[v].empty() || seen[v]) continue;
    auto c = trace_cycle(g, half, v);
    for (NodeId w : c.nodes) seen[w] = true;
    if (c.nodes.size() < 3 || c.nodes.size() % 2 == 0) return false;
  }
  return true;
}

SupportDecomposition decompose_support(const FracSolution& x, const Graph& g) {
  std::vector<std::vector<EdgeId>> half;
  SupportDecomposition d;
  if (!classify(x, g, half, d.matched_edges))
    throw std::invalid_argument("vector is not proper-half-integral");
  std::vector<bool> seen(g.node_count(), false);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (half[v].empty() || seen[v]) continue;
    auto c = trace_cycle(g, half, v);
    for (NodeId w : c.nodes) seen[w] = true;
    if (c.nodes.size() < 3 || c.nodes.size() % 2 == 0)
      throw std::invalid_argument("support contains an even cycle");
    d.odd_cycles.push_back(std::move(c));
  }
  return d;
}

FracSolution reassemble(const SupportDecomposition& d, int edge_count) {
  FracSolution x(edge_count);
  for (EdgeId e : d.matched_edges) x[e] = 1;
  for (const auto& c : d.odd_cycles)
    for (EdgeId e : c.edges) x[e] = kHalf;
  return x;
}

bool check_degree_and_cut_feasibility(const FracSolution& x, const Graph& g,
                                      const LaminarFamily& fam) {
  if (static_cast<int>(x.size()) != g.edge_count()) return false;
  std::vector<Rational> deg(g.node_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (x[e].sign() < 0) return false;
    deg[g.edge(e).u] += x[e];
    deg[g.edge(e).v] += x[e];
  }
  for (const auto& d : deg)
    if (d != Rational(1)) return false;
  for (const auto& s : fam.sets())
    if (cut_value(g, x, s) < Rational(1)) return false;
  return true;
}

bool is_integral(const FracSolution& x) {
  return std::all_of(x.begin(), x.end(),
                     [](const Rational& v) { return v.is_zero() || v == Rational(1); });
}

}  // namespace cpm
