#include "cpm/contract.hpp"

#include <algorithm>
#include <stdexcept>

namespace cpm {

Contraction contract_maximal(const Graph& g, std::span<const Rational> costs,
                             const LaminarFamily& fam, const DualSolution& dual,
                             const std::vector<OddSet>& which) {
  const int n = g.node_count();
  Contraction c;
  c.shrunk = which;
  std::sort(c.shrunk.begin(), c.shrunk.end(),
            [](const OddSet& a, const OddSet& b) { return a.min_node() < b.min_node(); });
  std::vector<int> owner(n, -1);
  for (std::size_t k = 0; k < c.shrunk.size(); ++k) {
    for (NodeId v : c.shrunk[k].members()) {
      if (owner[v] >= 0) throw std::invalid_argument("contracted sets overlap at node " + std::to_string(v + 1));
      owner[v] = static_cast<int>(k);
    }
  }

  c.node_image.assign(n, -1);
  std::vector<NodeId> set_node(c.shrunk.size(), -1);
  int next = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (owner[v] < 0) {
      c.node_image[v] = next++;
      c.node_set.push_back(-1);
    } else if (set_node[owner[v]] < 0) {
      set_node[owner[v]] = next++;
      c.node_set.push_back(owner[v]);
      c.node_image[v] = set_node[owner[v]];
    } else {
      c.node_image[v] = set_node[owner[v]];
    }
  }

  std::vector<Edge> edges;
  c.edge_image.assign(g.edge_count(), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    if (owner[ed.u] >= 0 && owner[ed.u] == owner[ed.v]) continue;
    Rational cost = costs[e];
    for (NodeId w : {ed.u, ed.v})
      if (owner[w] >= 0) cost -= dual.inner(c.shrunk[owner[w]], w);
    c.edge_image[e] = static_cast<EdgeId>(edges.size());
    c.edge_preimage.push_back(e);
    edges.push_back({c.node_image[ed.u], c.node_image[ed.v], ed.cost});
    c.costs.push_back(std::move(cost));
  }
  c.graph = Graph(next, std::move(edges));

  c.family = LaminarFamily(next, false);
  for (const auto& t : fam.sorted()) {
    bool inside = false;
    for (const auto& s : c.shrunk) inside = inside || t.subset_of(s);
    if (inside) continue;  // singular image
    std::vector<NodeId> img;
    for (NodeId v : t.members()) img.push_back(c.node_image[v]);
    OddSet image(std::move(img));
    c.family.insert(image);
    c.set_image.emplace(t, image);
  }
  return c;
}

FracSolution Contraction::image(const FracSolution& x) const {
  FracSolution out(edge_preimage.size());
  for (std::size_t e = 0; e < edge_preimage.size(); ++e) out[e] = x[edge_preimage[e]];
  return out;
}

DualSolution Contraction::image(const DualSolution& dual) const {
  DualSolution out(graph.node_count());
  for (NodeId v = 0; v < static_cast<NodeId>(node_image.size()); ++v)
    if (node_set[node_image[v]] < 0) out.set_node(node_image[v], dual.node(v));
  for (std::size_t k = 0; k < shrunk.size(); ++k)
    out.set_node(node_image[shrunk[k].min_node()], dual.set(shrunk[k]));
  for (const auto& [s, v] : dual.set_values()) {
    auto it = set_image.find(s);
    if (it != set_image.end()) out.set_value(it->second, v);
  }
  return out;
}

std::vector<NodeId> Contraction::preimage(NodeId v) const {
  if (node_set[v] >= 0) return shrunk[node_set[v]].members();
  for (NodeId u = 0; u < static_cast<NodeId>(node_image.size()); ++u)
    if (node_image[u] == v) return {u};
  return {};
}

}  // namespace cpm
