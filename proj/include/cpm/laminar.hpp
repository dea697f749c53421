#pragma once

#include <compare>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "cpm/graph.hpp"

namespace cpm {

/// Odd node set of size at least 3; members kept sorted and unique.
class OddSet {
 public:
  OddSet() = default;
  /// Throws std::invalid_argument unless the (deduplicated) size is odd and >= 3.
  explicit OddSet(std::vector<NodeId> members);
  OddSet(std::initializer_list<NodeId> members) : OddSet(std::vector<NodeId>(members)) {}

  [[nodiscard]] const std::vector<NodeId>& members() const { return members_; }
  [[nodiscard]] int size() const { return static_cast<int>(members_.size()); }
  [[nodiscard]] NodeId min_node() const { return members_.front(); }
  [[nodiscard]] bool contains(NodeId v) const;
  [[nodiscard]] bool subset_of(const OddSet& o) const;
  [[nodiscard]] bool intersects(const OddSet& o) const;
  [[nodiscard]] bool intersects(const std::vector<NodeId>& sorted_nodes) const;
  /// Exactly one endpoint inside.
  [[nodiscard]] bool crosses(const Edge& e) const { return contains(e.u) != contains(e.v); }
  /// 1-based, e.g. "{1,2,3}".
  [[nodiscard]] std::string str() const;

  friend bool operator==(const OddSet&, const OddSet&) = default;
  friend auto operator<=>(const OddSet&, const OddSet&) = default;

 private:
  std::vector<NodeId> members_;
};

/// Ordering used wherever family sets must be enumerated deterministically:
/// by size, then by member list.
bool size_then_members_less(const OddSet& a, const OddSet& b);

/// Laminar family of odd sets over a fixed node count, stored as an
/// inclusion forest.
class LaminarFamily {
 public:
  LaminarFamily() = default;
  /// `bounded` = false drops the n-3 and n/2 size checks (images under
  /// contraction may legitimately break them); crossing is always rejected.
  explicit LaminarFamily(int n, bool bounded = true) : n_(n), bounded_(bounded) {}

  /// Adds `s`; a set already present is ignored. Throws LaminarityViolation if
  /// `s` properly crosses a member, exceeds n-3 nodes, or the family would grow
  /// past n/2 members.
  void insert(const OddSet& s);

  [[nodiscard]] int node_count() const { return n_; }
  [[nodiscard]] int size() const { return static_cast<int>(sets_.size()); }
  [[nodiscard]] bool empty() const { return sets_.empty(); }
  [[nodiscard]] const std::vector<OddSet>& sets() const { return sets_; }
  [[nodiscard]] const OddSet& at(int i) const { return sets_[i]; }
  /// Index of the smallest strict superset, or -1 for a root.
  [[nodiscard]] int parent(int i) const { return parent_[i]; }
  [[nodiscard]] std::optional<int> index_of(const OddSet& s) const;
  [[nodiscard]] bool contains(const OddSet& s) const { return index_of(s).has_value(); }
  /// Inclusion-maximal members.
  [[nodiscard]] std::vector<OddSet> maximal_sets() const;
  /// Members sorted by size_then_members_less.
  [[nodiscard]] std::vector<OddSet> sorted() const;
  /// Members strictly inside `s` (need not be a member itself).
  [[nodiscard]] std::vector<OddSet> strict_subsets_of(const OddSet& s) const;
  /// Inclusion-maximal members meeting `nodes`.
  [[nodiscard]] std::vector<OddSet> maximal_sets_intersecting(const std::vector<NodeId>& nodes) const;
  /// Pairwise laminar and within the n/2 bound.
  [[nodiscard]] bool is_laminar() const;

 private:
  void rebuild_forest();

  int n_ = 0;
  bool bounded_ = true;
  std::vector<OddSet> sets_;
  std::vector<int> parent_;
};

/// Value-returning form of LaminarFamily::insert.
LaminarFamily insert_checked(LaminarFamily fam, const OddSet& s);

/// True iff any two of `sets` are disjoint or nested.
bool pairwise_laminar(const std::vector<OddSet>& sets);

}  // namespace cpm
