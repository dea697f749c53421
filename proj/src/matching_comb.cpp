#include "cpm/matching_comb.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>

#include "cpm/errors.hpp"
#include "cpm/support.hpp"

namespace cpm {

namespace {

const Rational kHalf = rat(1, 2);

class CriticalSearch {
 public:
  CriticalSearch(const Graph& g, const std::vector<bool>& tight, const OddSet& s,
                 const std::vector<OddSet>& inner)
      : local_(g.node_count(), -1) {
    if (s.size() > 63) throw std::invalid_argument("critical matching search limited to 63 nodes");
    for (int i = 0; i < s.size(); ++i) local_[s.members()[i]] = i;
    full_ = (std::uint64_t{1} << s.size()) - 1;
    adj_.resize(s.size());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!tight[e]) continue;
      const int a = local_[g.edge(e).u];
      const int b = local_[g.edge(e).v];
      if (a < 0 || b < 0) continue;
      adj_[a].push_back({b, e});
      adj_[b].push_back({a, e});
    }
    for (const auto& t : inner) {
      std::uint64_t mask = 0;
      for (NodeId v : t.members()) mask |= std::uint64_t{1} << local_[v];
      masks_.push_back(mask);
    }
    count_.assign(masks_.size(), 0);
  }

  std::optional<Matching> find(NodeId u) {
    covered_ = std::uint64_t{1} << local_[u];
    matching_.clear();
    std::fill(count_.begin(), count_.end(), 0);
    if (!dfs()) return std::nullopt;
    auto m = matching_;
    std::sort(m.begin(), m.end());
    return m;
  }

 private:
  struct Arc {
    int to;
    EdgeId e;
  };

  bool dfs() {
    if (covered_ == full_) return true;
    const int a = std::countr_zero(~covered_ & full_);
    for (const auto& [b, e] : adj_[a]) {
      if (covered_ >> b & 1) continue;
      const std::uint64_t ab = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
      bool ok = true;
      for (std::size_t k = 0; k < masks_.size() && ok; ++k) {
        const auto hit = masks_[k] & ab;
        if (hit != 0 && hit != ab && count_[k] >= 1) ok = false;
      }
      if (!ok) continue;
      for (std::size_t k = 0; k < masks_.size(); ++k) {
        const auto hit = masks_[k] & ab;
        if (hit != 0 && hit != ab) ++count_[k];
      }
      covered_ |= ab;
      matching_.push_back(e);
      if (dfs()) return true;
      matching_.pop_back();
      covered_ &= ~ab;
      for (std::size_t k = 0; k < masks_.size(); ++k) {
        const auto hit = masks_[k] & ab;
        if (hit != 0 && hit != ab) --count_[k];
      }
    }
    return false;
  }

  std::vector<int> local_;
  std::uint64_t full_ = 0;
  std::uint64_t covered_ = 0;
  std::vector<std::vector<Arc>> adj_;
  std::vector<std::uint64_t> masks_;
  std::vector<int> count_;
  Matching matching_;
};

std::vector<OddSet> strictly_inside(const std::vector<OddSet>& sets, const OddSet& s) {
  std::vector<OddSet> out;
  for (const auto& t : sets)
    if (t != s && t.subset_of(s)) out.push_back(t);
  return out;
}

}  // namespace

std::optional<Matching> critical_matching(const Graph& g, const std::vector<bool>& tight,
                                          const OddSet& s, const std::vector<OddSet>& inner,
                                          NodeId u) {
  if (!s.contains(u)) throw std::invalid_argument("node is not a member of the set");
  return CriticalSearch(g, tight, s, inner).find(u);
}

std::optional<Matching> critical_matching(const Graph& g, std::span<const Rational> costs,
                                          const OddSet& s, const LaminarFamily& fam,
                                          const DualSolution& dual, NodeId u) {
  return critical_matching(g, dual.tight_edges(g, costs), s, fam.strict_subsets_of(s), u);
}

bool is_factor_critical(const Graph& g, const std::vector<bool>& tight, const OddSet& s,
                        const std::vector<OddSet>& inner) {
  CriticalSearch search(g, tight, s, inner);
  for (NodeId u : s.members())
    if (!search.find(u)) return false;
  return true;
}

bool is_factor_critical(const Graph& g, std::span<const Rational> costs, const OddSet& s,
                        const LaminarFamily& fam, const DualSolution& dual) {
  return is_factor_critical(g, dual.tight_edges(g, costs), s, fam.strict_subsets_of(s));
}

bool is_positively_critical(const Graph& g, std::span<const Rational> costs,
                            const LaminarFamily& fam, const DualSolution& dual) {
  const auto tight = dual.tight_edges(g, costs);
  for (const auto& [s, v] : dual.set_values())
    if (v.sign() > 0 && !is_factor_critical(g, tight, s, fam.strict_subsets_of(s))) return false;
  return true;
}

bool identical_inside(const DualSolution& a, const DualSolution& b, const OddSet& s,
                      const LaminarFamily& fam) {
  for (NodeId v : s.members())
    if (a.node(v) != b.node(v)) return false;
  for (const auto& t : fam.strict_subsets_of(s))
    if (a.set(t) != b.set(t)) return false;
  for (const auto* d : {&a, &b})
    for (const auto& [t, v] : d->set_values())
      if (t != s && t.subset_of(s) && a.set(t) != b.set(t)) return false;
  return true;
}

PositivelyCritical make_positively_critical(const Graph& g, std::span<const Rational> costs,
                                            const LaminarFamily& fam, const DualSolution& pi_fc,
                                            const DualSolution& psi, const Rational& optimum) {
  if (!psi.feasible(g, costs, fam)) throw PreconditionBroken("dual is not feasible");
  if (psi.objective() != optimum)
    throw PreconditionBroken("dual objective " + psi.objective().str() + " differs from optimum " +
                             optimum.str());
  PositivelyCritical out{psi, 0};
  auto& cur = out.dual;
  const auto order = fam.sorted();
  for (;;) {
    const OddSet* pick = nullptr;
    for (const auto& s : order) {
      if (cur.set(s).sign() <= 0 || identical_inside(pi_fc, cur, s, fam)) continue;
      if (!pick || s.size() > pick->size()) pick = &s;
    }
    if (!pick) break;
    const OddSet& s = *pick;
    const Rational delta = consistency_delta(pi_fc, cur, s);
    if (delta.sign() < 0) throw PreconditionBroken("negative consistency delta on " + s.str());
    Rational lambda(1);
    if (delta.sign() > 0 && cur.set(s) / delta < lambda) lambda = cur.set(s) / delta;
    const Rational keep = Rational(1) - lambda;
    for (NodeId v : s.members()) cur.set_node(v, keep * cur.node(v) + lambda * pi_fc.node(v));
    for (const auto& t : fam.strict_subsets_of(s)) cur.set_value(t, keep * cur.set(t) + lambda * pi_fc.set(t));
    cur.set_value(s, cur.set(s) - delta * lambda);
    if (++out.iterations > 2 * fam.size() + 2)
      throw StructureViolation("positively-critical transformation does not terminate");
  }
  return out;
}

Rational consistency_delta(const DualSolution& pi, const DualSolution& psi, const OddSet& s) {
  std::optional<Rational> best;
  for (NodeId u : s.members()) {
    Rational d = pi.inner(s, u) - psi.inner(s, u);
    if (!best || d > *best) best = std::move(d);
  }
  return *best;
}

bool is_consistent(const Graph& g, const FracSolution& x, const DualSolution& pi,
                   const DualSolution& psi, const OddSet& s) {
  const Rational delta = consistency_delta(pi, psi, s);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    if (x[e].is_zero() || !s.crosses(ed)) continue;
    const NodeId u = s.contains(ed.u) ? ed.u : ed.v;
    if (pi.inner(s, u) - psi.inner(s, u) != delta) return false;
  }
  return true;
}

void validate_configuration(const Graph& g, std::span<const Rational> costs,
                            const ValidConfiguration& cfg) {
  auto fail = [](const std::string& why) { throw InvalidConfiguration(why); };
  const auto& K = cfg.K;
  const auto& L = cfg.L.sets();
  for (std::size_t i = 0; i < K.size(); ++i) {
    for (std::size_t j = i + 1; j < K.size(); ++j)
      if (K[i].intersects(K[j])) fail("(A) K sets " + K[i].str() + " and " + K[j].str() + " overlap");
    for (const auto& t : L)
      if (t.intersects(K[i]) && !(t.subset_of(K[i]) && t != K[i]))
        fail("(A) L set " + t.str() + " meets K set " + K[i].str());
  }
  std::vector<OddSet> all = L;
  all.insert(all.end(), K.begin(), K.end());
  if (!pairwise_laminar(all)) fail("(A) L and K are not laminar together");

  const auto& lam = cfg.lambda;
  for (const auto& [s, v] : lam.set_values())
    if (std::find(all.begin(), all.end(), s) == all.end()) fail("(A) dual supported on " + s.str());
  for (const auto& s : L)
    if (lam.set(s).sign() <= 0) fail("(A) L set " + s.str() + " has nonpositive dual");
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (lam.slack(g, costs, e).sign() < 0) fail("(A) edge " + std::to_string(e + 1) + " violated");
  const auto tight = lam.tight_edges(g, costs);
  for (const auto& s : all)
    if (!is_factor_critical(g, tight, s, strictly_inside(all, s)))
      fail("(A) " + s.str() + " is not factor-critical");

  const auto& z = cfg.z;
  if (!is_proper_half_integral(z, g)) fail("(B) z is not proper-half-integral");
  std::vector<Rational> deg(g.node_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    deg[g.edge(e).u] += z[e];
    deg[g.edge(e).v] += z[e];
    if (!z[e].is_zero() && !tight[e]) fail("(C) support edge " + std::to_string(e + 1) + " not tight");
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (deg[v] == Rational(1)) continue;
    if (!deg[v].is_zero()) fail("(B) node " + std::to_string(v + 1) + " over-covered");
    for (const auto& s : all)
      if (s.contains(v)) fail("(B) node " + std::to_string(v + 1) + " exposed inside " + s.str());
  }
  const auto dec = decompose_support(z, g);
  auto cycles_inside = [&](const OddSet& s) {
    int c = 0;
    for (const auto& cyc : dec.odd_cycles)
      if (std::all_of(cyc.nodes.begin(), cyc.nodes.end(), [&](NodeId v) { return s.contains(v); })) ++c;
    return c;
  };
  for (const auto& s : K) {
    const Rational cut = cut_value(g, z, s);
    const int c = cycles_inside(s);
    if (cut.is_zero() ? c != 1 : (cut != Rational(1) || c != 0))
      fail("(B) support inside K set " + s.str() + " has the wrong shape");
  }
  for (const auto& s : L) {
    const bool frozen = std::any_of(K.begin(), K.end(), [&](const OddSet& k) { return s.subset_of(k); });
    if (!frozen && cut_value(g, z, s) != Rational(1)) fail("(C) L set " + s.str() + " not tight in z");
    if (!frozen && cycles_inside(s) != 0) fail("(B) odd cycle inside L set " + s.str());
  }
}

namespace {

class Procedure {
 public:
  Procedure(const Graph& g, std::span<const Rational> costs, ValidConfiguration cfg,
            ProcedureStats* stats, const ProcedureOptions& opts)
      : g_(g), costs_(costs), l_(cfg.L.sets()), k_(std::move(cfg.K)), z_(std::move(cfg.z)),
        lam_(std::move(cfg.lambda)), stats_(stats), opts_(opts) {}

  ValidConfiguration run() {
    if (stats_) stats_->initial_family_size = static_cast<int>(l_.size() + k_.size());
    const int cap = 8 * (g_.node_count() + static_cast<int>(l_.size() + k_.size()) + 1) *
                    (g_.node_count() + 1);
    for (int it = 0;; ++it) {
      if (it > cap) throw StructureViolation("half-integral procedure exceeded its iteration cap");
      build();
      if (exposed_.empty()) break;
      const int q = static_cast<int>(exposed_.size()) + half_cycle_count();
      const std::string label = step();
      if (stats_) {
        ++stats_->iterations;
        stats_->cases.push_back(label);
        stats_->q.push_back(q);
      }
      if (opts_.validate_each_step) validate_configuration(g_, costs_, config());
    }
    if (stats_) {
      // An iteration that lowers q closes the current phase and belongs to none.
      auto q = stats_->q;
      q.push_back(half_cycle_count());
      bool open = false;
      for (std::size_t i = 0; i + 1 < q.size(); ++i) {
        if (q[i + 1] != q[i]) {
          open = false;
          continue;
        }
        if (!open) stats_->phase_lengths.push_back(0);
        open = true;
        ++stats_->phase_lengths.back();
      }
    }
    return config();
  }

 private:
  struct Arc {
    int to;
    EdgeId e;
  };

  ValidConfiguration config() const {
    LaminarFamily fam(g_.node_count());
    for (const auto& s : l_) fam.insert(s);
    return {fam, k_, z_, lam_};
  }

  void build() {
    const int n = g_.node_count();
    std::vector<OddSet> all = l_;
    all.insert(all.end(), k_.begin(), k_.end());
    top_.clear();
    for (const auto& s : all) {
      bool maximal = true;
      for (const auto& t : all)
        if (t != s && s.subset_of(t)) maximal = false;
      if (maximal) top_.push_back(s);
    }
    std::vector<int> owner(n, -1);
    for (std::size_t k = 0; k < top_.size(); ++k)
      for (NodeId v : top_[k].members()) owner[v] = static_cast<int>(k);
    star_.assign(n, -1);
    star_top_.clear();
    star_plain_.clear();
    std::vector<int> top_star(top_.size(), -1);
    for (NodeId v = 0; v < n; ++v) {
      if (owner[v] < 0) {
        star_[v] = static_cast<int>(star_top_.size());
        star_top_.push_back(-1);
        star_plain_.push_back(v);
      } else if (top_star[owner[v]] < 0) {
        top_star[owner[v]] = static_cast<int>(star_top_.size());
        star_[v] = top_star[owner[v]];
        star_top_.push_back(owner[v]);
        star_plain_.push_back(-1);
      } else {
        star_[v] = top_star[owner[v]];
      }
    }
    const int ns = static_cast<int>(star_top_.size());
    adj_.assign(ns, {});
    one_edge_.assign(ns, -1);
    halves_.assign(ns, {});
    tight_ = lam_.tight_edges(g_, costs_);
    std::vector<Rational> deg(ns);
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      const int a = star_[g_.edge(e).u];
      const int b = star_[g_.edge(e).v];
      if (a == b) continue;
      if (tight_[e]) {
        adj_[a].push_back({b, e});
        adj_[b].push_back({a, e});
      }
      if (z_[e].is_zero()) continue;
      deg[a] += z_[e];
      deg[b] += z_[e];
      if (z_[e] == Rational(1)) {
        one_edge_[a] = e;
        one_edge_[b] = e;
      } else {
        halves_[a].push_back(e);
        halves_[b].push_back(e);
      }
    }
    for (auto& list : adj_)
      std::sort(list.begin(), list.end(), [](const Arc& x, const Arc& y) {
        return x.to != y.to ? x.to < y.to : x.e < y.e;
      });
    exposed_.clear();
    in_r_.assign(ns, false);
    for (int s = 0; s < ns; ++s) {
      if (deg[s].is_zero()) exposed_.push_back(s);
      if (deg[s].is_zero() || !halves_[s].empty()) in_r_[s] = true;
    }
  }

  int other_star(EdgeId e, int s) const {
    const int a = star_[g_.edge(e).u];
    return a == s ? star_[g_.edge(e).v] : a;
  }

  int half_cycle_count() const {
    const int ns = static_cast<int>(star_top_.size());
    std::vector<bool> seen(ns, false);
    int count = 0;
    for (int s = 0; s < ns; ++s) {
      if (halves_[s].empty() || seen[s]) continue;
      ++count;
      std::vector<int> stack{s};
      seen[s] = true;
      while (!stack.empty()) {
        const int a = stack.back();
        stack.pop_back();
        for (EdgeId e : halves_[a]) {
          const int b = other_star(e, a);
          if (!seen[b]) {
            seen[b] = true;
            stack.push_back(b);
          }
        }
      }
    }
    return count;
  }

  // One iteration; returns the case label.
  std::string step() {
    const int ns = static_cast<int>(star_top_.size());
    std::vector<int> parent(2 * ns, -2);
    std::vector<EdgeId> via(2 * ns, -1);
    std::queue<int> queue;
    for (int t : exposed_) {
      parent[2 * t] = -1;
      queue.push(2 * t);
    }
    int goal = -1;
    while (!queue.empty() && goal < 0) {
      const int state = queue.front();
      queue.pop();
      const int v = state / 2;
      if (state % 2 == 0) {
        for (const auto& [w, e] : adj_[v]) {
          if (!z_[e].is_zero() || parent[2 * w + 1] != -2) continue;
          parent[2 * w + 1] = state;
          via[2 * w + 1] = e;
          if (in_r_[w]) {
            goal = 2 * w + 1;
            break;
          }
          queue.push(2 * w + 1);
        }
      } else {
        const EdgeId e = one_edge_[v];
        if (e < 0 || !tight_[e]) continue;
        const int w = other_star(e, v);
        if (parent[2 * w] != -2) continue;
        parent[2 * w] = state;
        via[2 * w] = e;
        queue.push(2 * w);
      }
    }
    if (goal >= 0) return case_one(goal, parent, via);
    case_two(parent);
    return "II";
  }

  std::string case_one(int goal, const std::vector<int>& parent, const std::vector<EdgeId>& via) {
    std::vector<int> nodes;
    std::vector<EdgeId> edges;
    for (int s = goal; s >= 0; s = parent[s]) {
      nodes.push_back(s / 2);
      if (parent[s] >= 0) edges.push_back(via[s]);
    }
    std::reverse(nodes.begin(), nodes.end());
    std::reverse(edges.begin(), edges.end());

    // First repeated node, if any.
    std::map<int, int> first_seen;
    int rep_i = -1;
    int rep_j = -1;
    for (int j = 0; j < static_cast<int>(nodes.size()) && rep_j < 0; ++j) {
      auto [it, fresh] = first_seen.emplace(nodes[j], j);
      if (!fresh) {
        rep_i = it->second;
        rep_j = j;
      }
    }
    std::vector<int> touched;
    auto flip = [&](EdgeId e) {
      z_[e] = Rational(1) - z_[e];
      touched.push_back(star_[g_.edge(e).u]);
      touched.push_back(star_[g_.edge(e).v]);
    };
    std::string label;
    if (rep_j < 0) {
      for (EdgeId e : edges) flip(e);
      const int end = nodes.back();
      if (halves_[end].empty()) {
        label = "I(a)";
      } else {
        label = "I(b)";
        // Walk the half-cycle from `end`; edges at even distance become 0, odd become 1.
        std::vector<EdgeId> cycle;
        int cur = end;
        EdgeId prev = -1;
        do {
          const EdgeId e = halves_[cur][0] != prev ? halves_[cur][0] : halves_[cur][1];
          cycle.push_back(e);
          cur = other_star(e, cur);
          prev = e;
        } while (cur != end);
        for (std::size_t i = 0; i < cycle.size(); ++i) {
          z_[cycle[i]] = Rational(i % 2 == 1 ? 1 : 0);
          touched.push_back(star_[g_.edge(cycle[i]).u]);
          touched.push_back(star_[g_.edge(cycle[i]).v]);
        }
      }
    } else {
      if (rep_i % 2 != 0 || rep_j % 2 != 1)
        throw StructureViolation("alternating walk closes with the wrong parity");
      label = "I(c)";
      for (int k = 0; k < rep_i; ++k) flip(edges[k]);
      for (int k = rep_i; k < rep_j; ++k) {
        z_[edges[k]] = kHalf;
        touched.push_back(star_[g_.edge(edges[k]).u]);
        touched.push_back(star_[g_.edge(edges[k]).v]);
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int s : touched)
      if (star_top_[s] >= 0) refresh_interior(top_[star_top_[s]]);
    return label;
  }

  void case_two(const std::vector<int>& parent) {
    const int ns = static_cast<int>(star_top_.size());
    std::vector<int8_t> side(ns, 0);  // +1 for B+, -1 for B-
    for (int s = 0; s < ns; ++s) {
      const bool even = parent[2 * s] != -2;
      const bool odd = parent[2 * s + 1] != -2;
      if (even && odd) throw StructureViolation("node reachable at both parities in case II");
      side[s] = even ? 1 : (odd ? -1 : 0);
    }
    std::optional<Rational> eps;
    auto bound = [&](Rational v) {
      if (!eps || v < *eps) eps = std::move(v);
    };
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      const int a = star_[g_.edge(e).u];
      const int b = star_[g_.edge(e).v];
      if (a == b) continue;
      const int sa = side[a];
      const int sb = side[b];
      if (sa + sb == 1 && (sa == 0 || sb == 0)) bound(lam_.slack(g_, costs_, e));
      else if (sa == 1 && sb == 1) bound(lam_.slack(g_, costs_, e) * kHalf);
    }
    for (int s = 0; s < ns; ++s) {
      if (side[s] != -1 || star_top_[s] < 0) continue;
      const OddSet& set = top_[star_top_[s]];
      if (is_l(set)) bound(lam_.set(set));
    }
    if (!eps) throw StalledNoEpsilon("dual step is unbounded: no perfect matching");
    if (eps->sign() <= 0) throw StalledNoEpsilon("dual step is zero with no applicable case");
    for (int s = 0; s < ns; ++s) {
      if (side[s] == 0) continue;
      const Rational d = side[s] > 0 ? *eps : -*eps;
      if (star_top_[s] < 0) lam_.set_node(star_plain_[s], lam_.node(star_plain_[s]) + d);
      else lam_.set_value(top_[star_top_[s]], lam_.set(top_[star_top_[s]]) + d);
    }
    for (int s = 0; s < ns; ++s) {
      if (side[s] != -1 || star_top_[s] < 0) continue;
      const OddSet set = top_[star_top_[s]];
      if (is_l(set) && lam_.set(set).is_zero()) {
        l_.erase(std::find(l_.begin(), l_.end(), set));
        if (stats_) ++stats_->unshrinks;
      }
    }
  }

  bool is_l(const OddSet& s) const { return std::find(l_.begin(), l_.end(), s) != l_.end(); }

  const Matching& matching_for(const OddSet& s, NodeId u) {
    auto key = std::make_pair(s, u);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<OddSet> all = l_;
    all.insert(all.end(), k_.begin(), k_.end());
    auto m = critical_matching(g_, lam_.tight_edges(g_, costs_), s, strictly_inside(all, s), u);
    if (!m) throw StructureViolation("no critical matching for " + s.str() + " at node " + std::to_string(u + 1));
    return memo_.emplace(key, std::move(*m)).first->second;
  }

  // Rewrites z inside a shrunk set from its current boundary edges.
  void refresh_interior(const OddSet& s) {
    std::vector<NodeId> ends;
    Rational total;
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      const auto& ed = g_.edge(e);
      if (z_[e].is_zero() || !s.crosses(ed)) continue;
      total += z_[e];
      const NodeId u = s.contains(ed.u) ? ed.u : ed.v;
      ends.push_back(u);
      if (z_[e] == Rational(1)) ends.push_back(u);
    }
    if (total != Rational(1) || ends.size() != 2)
      throw StructureViolation("shrunk set " + s.str() + " has an irregular boundary");
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      const auto& ed = g_.edge(e);
      if (s.contains(ed.u) && s.contains(ed.v)) z_[e] = 0;
    }
    for (NodeId u : ends)
      for (EdgeId e : matching_for(s, u)) z_[e] += kHalf;
  }

  const Graph& g_;
  std::span<const Rational> costs_;
  std::vector<OddSet> l_;
  std::vector<OddSet> k_;
  FracSolution z_;
  DualSolution lam_;
  ProcedureStats* stats_;
  ProcedureOptions opts_;

  std::vector<OddSet> top_;
  std::vector<int> star_;
  std::vector<int> star_top_;
  std::vector<NodeId> star_plain_;
  std::vector<std::vector<Arc>> adj_;
  std::vector<EdgeId> one_edge_;
  std::vector<std::vector<EdgeId>> halves_;
  std::vector<bool> tight_;
  std::vector<int> exposed_;
  std::vector<bool> in_r_;
  std::map<std::pair<OddSet, NodeId>, Matching> memo_;
};

}  // namespace

ValidConfiguration run_half_integral_procedure(const Graph& g, std::span<const Rational> costs,
                                               ValidConfiguration cfg, ProcedureStats* stats,
                                               const ProcedureOptions& opts) {
  validate_configuration(g, costs, cfg);
  return Procedure(g, costs, std::move(cfg), stats, opts).run();
}

ValidConfiguration zero_configuration(const Graph& g, std::span<const Rational> costs) {
  const int n = g.node_count();
  DualSolution lam(n);
  for (NodeId v = 0; v < n; ++v) {
    if (g.incident(v).empty()) throw NoPerfectMatching("node " + std::to_string(v + 1) + " is isolated");
    std::optional<Rational> best;
    for (EdgeId e : g.incident(v))
      if (!best || costs[e] < *best) best = costs[e];
    lam.set_node(v, *best * kHalf);
  }
  return {LaminarFamily(n), {}, FracSolution(g.edge_count()), lam};
}

CombinatorialResult solve_combinatorial(const Graph& g, std::span<const Rational> costs,
                                        const LaminarFamily& h_prime,
                                        const std::vector<OddSet>& h_second,
                                        const FracSolution& x, const DualSolution& pi,
                                        const ProcedureOptions& opts) {
  CombinatorialResult out;
  if (x.empty()) {
    out.final_config = run_half_integral_procedure(g, costs, zero_configuration(g, costs), &out.stats, opts);
    out.x = out.final_config.z;
    out.certified = true;
    out.candidates_tried = 1;
    return out;
  }
  LaminarFamily h = h_prime;
  for (const auto& s : h_second) h.insert(s);

  const int k = static_cast<int>(h_second.size());
  if (k > 20) throw std::invalid_argument("too many new cuts for the subset search");
  std::vector<unsigned> masks;
  for (unsigned m = 0; m < (1u << k); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned a, unsigned b) { return std::popcount(a) > std::popcount(b); });

  std::optional<CombinatorialResult> cheapest;
  Rational cheapest_cost;
  // An unbounded dual with K = H'' means P_H itself is infeasible.
  bool full_unbounded = false;
  for (unsigned mask : masks) {
    ValidConfiguration cfg{h_prime, {}, x, pi};
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) cfg.K.push_back(h_second[i]);
    CombinatorialResult cand;
    cand.chosen_k = cfg.K;
    ++out.candidates_tried;
    try {
      cand.final_config = run_half_integral_procedure(g, costs, std::move(cfg), &cand.stats, opts);
    } catch (const InvalidConfiguration&) {
      continue;
    } catch (const StalledNoEpsilon&) {
      if (mask + 1 == (1u << k)) full_unbounded = true;
      continue;
    } catch (const StructureViolation&) {
      continue;
    }
    cand.x = cand.final_config.z;
    if (!check_degree_and_cut_feasibility(cand.x, g, h)) continue;
    cand.certified = std::all_of(cand.chosen_k.begin(), cand.chosen_k.end(), [&](const OddSet& s) {
      return cand.final_config.lambda.set(s).sign() >= 0;
    });
    cand.candidates_tried = out.candidates_tried;
    if (cand.certified) return cand;
    const Rational cost = solution_cost(costs, cand.x);
    if (!cheapest || cost < cheapest_cost) {
      cheapest_cost = cost;
      cheapest = std::move(cand);
    }
  }
  if (!cheapest && full_unbounded) throw StalledNoEpsilon("dual unbounded with every new cut shrunk");
  if (!cheapest) throw StructureViolation("no candidate configuration produced a feasible optimum");
  cheapest->candidates_tried = out.candidates_tried;
  return std::move(*cheapest);
}

}  // namespace cpm
