#include "cpm/dual.hpp"

#include <sstream>

namespace cpm {

Rational DualSolution::set(const OddSet& s) const {
  auto it = sets_.find(s);
  return it == sets_.end() ? Rational(0) : it->second;
}

void DualSolution::set_value(const OddSet& s, Rational val) {
  if (val.is_zero()) sets_.erase(s);
  else sets_[s] = std::move(val);
}

std::vector<OddSet> DualSolution::support_sets() const {
  std::vector<OddSet> out;
  for (const auto& [s, v] : sets_) out.push_back(s);
  return out;
}

Rational DualSolution::edge_load(const Edge& e) const {
  Rational sum = node_[e.u] + node_[e.v];
  for (const auto& [s, v] : sets_)
    if (s.crosses(e)) sum += v;
  return sum;
}

std::vector<bool> DualSolution::tight_edges(const Graph& g, std::span<const Rational> costs) const {
  std::vector<bool> out(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) out[e] = slack(g, costs, e).is_zero();
  return out;
}

Rational DualSolution::inner(const OddSet& s, NodeId u) const {
  Rational sum = node_[u];
  for (const auto& [t, v] : sets_)
    if (t != s && t.contains(u) && t.subset_of(s)) sum += v;
  return sum;
}

Rational DualSolution::objective() const {
  Rational sum;
  for (const auto& v : node_) sum += v;
  for (const auto& [s, v] : sets_) sum += v;
  return sum;
}

bool DualSolution::feasible(const Graph& g, std::span<const Rational> costs,
                            const LaminarFamily& fam) const {
  for (const auto& [s, v] : sets_)
    if (v.sign() < 0 || !fam.contains(s)) return false;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (slack(g, costs, e).sign() < 0) return false;
  return true;
}

std::string DualSolution::str() const {
  std::ostringstream os;
  for (std::size_t v = 0; v < node_.size(); ++v) os << "v " << v + 1 << ' ' << node_[v] << '\n';
  for (const auto& [s, v] : sets_) os << "S " << s.str() << ' ' << v << '\n';
  return os.str();
}

Rational cut_value(const Graph& g, const FracSolution& x, const OddSet& s) {
  Rational sum;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!x[e].is_zero() && s.crosses(g.edge(e))) sum += x[e];
  return sum;
}

Rational solution_cost(std::span<const Rational> costs, const FracSolution& x) {
  Rational sum;
  for (std::size_t e = 0; e < x.size(); ++e)
    if (!x[e].is_zero()) sum += costs[e] * x[e];
  return sum;
}

}  // namespace cpm
