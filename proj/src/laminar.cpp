#include "cpm/laminar.hpp"

#include <algorithm>
#include <stdexcept>

#include "cpm/errors.hpp"

namespace cpm {

OddSet::OddSet(std::vector<NodeId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.size() < 3 || members_.size() % 2 == 0)
    throw std::invalid_argument("odd set needs an odd number (>= 3) of nodes, got " +
                                std::to_string(members_.size()));
}

bool OddSet::contains(NodeId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

bool OddSet::subset_of(const OddSet& o) const {
  return std::includes(o.members_.begin(), o.members_.end(), members_.begin(), members_.end());
}

bool OddSet::intersects(const std::vector<NodeId>& sorted_nodes) const {
  auto a = members_.begin();
  auto b = sorted_nodes.begin();
  while (a != members_.end() && b != sorted_nodes.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a;
    else ++b;
  }
  return false;
}

bool OddSet::intersects(const OddSet& o) const { return intersects(o.members_); }

std::string OddSet::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(members_[i] + 1);
  }
  return s + "}";
}

bool size_then_members_less(const OddSet& a, const OddSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.members() < b.members();
}

namespace {

bool laminar_pair(const OddSet& a, const OddSet& b) {
  return !a.intersects(b) || a.subset_of(b) || b.subset_of(a);
}

}  // namespace

bool pairwise_laminar(const std::vector<OddSet>& sets) {
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (!laminar_pair(sets[i], sets[j])) return false;
  return true;
}

void LaminarFamily::insert(const OddSet& s) {
  if (contains(s)) return;
  if (s.members().back() >= n_) throw LaminarityViolation("set " + s.str() + " exceeds node range");
  if (bounded_ && s.size() > n_ - 3) throw LaminarityViolation("set " + s.str() + " has more than n-3 nodes");
  for (const auto& t : sets_)
    if (!laminar_pair(s, t))
      throw LaminarityViolation("set " + s.str() + " crosses member " + t.str());
  if (bounded_ && 2 * (size() + 1) > n_) throw LaminarityViolation("family would exceed n/2 members");
  sets_.push_back(s);
  rebuild_forest();
}

void LaminarFamily::rebuild_forest() {
  parent_.assign(sets_.size(), -1);
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    for (std::size_t j = 0; j < sets_.size(); ++j) {
      if (i == j || sets_[j].size() <= sets_[i].size() || !sets_[i].subset_of(sets_[j])) continue;
      if (parent_[i] < 0 || sets_[j].size() < sets_[parent_[i]].size())
        parent_[i] = static_cast<int>(j);
    }
  }
}

std::optional<int> LaminarFamily::index_of(const OddSet& s) const {
  for (std::size_t i = 0; i < sets_.size(); ++i)
    if (sets_[i] == s) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<OddSet> LaminarFamily::maximal_sets() const {
  std::vector<OddSet> out;
  for (std::size_t i = 0; i < sets_.size(); ++i)
    if (parent_[i] < 0) out.push_back(sets_[i]);
  std::sort(out.begin(), out.end(), size_then_members_less);
  return out;
}

std::vector<OddSet> LaminarFamily::sorted() const {
  auto out = sets_;
  std::sort(out.begin(), out.end(), size_then_members_less);
  return out;
}

std::vector<OddSet> LaminarFamily::strict_subsets_of(const OddSet& s) const {
  std::vector<OddSet> out;
  for (const auto& t : sets_)
    if (t != s && t.subset_of(s)) out.push_back(t);
  std::sort(out.begin(), out.end(), size_then_members_less);
  return out;
}

std::vector<OddSet> LaminarFamily::maximal_sets_intersecting(const std::vector<NodeId>& nodes) const {
  auto sorted_nodes = nodes;
  std::sort(sorted_nodes.begin(), sorted_nodes.end());
  std::vector<OddSet> out;
  // An ancestor of an intersecting set intersects too, so only roots qualify.
  for (std::size_t i = 0; i < sets_.size(); ++i)
    if (parent_[i] < 0 && sets_[i].intersects(sorted_nodes)) out.push_back(sets_[i]);
  std::sort(out.begin(), out.end(), size_then_members_less);
  return out;
}

bool LaminarFamily::is_laminar() const {
  return pairwise_laminar(sets_) && 2 * size() <= n_;
}

LaminarFamily insert_checked(LaminarFamily fam, const OddSet& s) {
  fam.insert(s);
  return fam;
}

}  // namespace cpm
