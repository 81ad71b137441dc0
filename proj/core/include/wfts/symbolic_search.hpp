/// @file  symbolic_search.hpp
/// @brief Feature-aware depth-first search and the symbolic finishing-times tree
///
/// dfsFts() runs one depth-first search for all products at once: instead of a
/// visited flag, every state carries the set of products for which it is
/// still unexplored. Each time a state finishes, the products it finishes for
/// are stamped with the next global time.
///
/// buildFinishingTimesTree() then turns those stamps into a tree whose
/// root-to-leaf paths list states by decreasing finishing time, one path per
/// family of products sharing the same order.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wfts/feature_algebra.hpp"
#include "wfts/wfts.hpp"

namespace wfts {

struct DfsEntry {
  StateId state = 0;
  /// Products for which `state` finished at `time`.
  ProductSet products;
  /// 1-based, consecutive.
  std::size_t time = 0;
};

class DfsOrder {
public:
  DfsOrder() = default;
  explicit DfsOrder(std::vector<DfsEntry> entries) : entries_(std::move(entries)) {}

  /// Entries in increasing time.
  const std::vector<DfsEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// Inverse lookup: the entry stamped at `time` (1-based).
  const DfsEntry& at(std::size_t time) const { return entries_.at(time - 1); }

private:
  std::vector<DfsEntry> entries_;
};

/// Symbolic DFS over all states in declaration order, following out-edges in
/// declaration order. The model should be unit-length (see expandLengths()).
DfsOrder dfsFts(const Wfts& w);

struct TreeNode {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Unset (npos) for the root.
  StateId state = npos;
  std::size_t parent = npos;
  std::size_t depth = 0;
  /// Label of the edge from the parent; the full product set for the root.
  ProductSet edgeLabel;
  /// Conjunction of edge labels from the root down to this node.
  ProductSet pathProducts;
  /// Time of the DFS entry that created the node; children are searched below it.
  std::size_t maxO = 0;
  std::vector<std::size_t> children;

  bool isRoot() const noexcept { return parent == npos; }
};

class FinishingTimesTree {
public:
  explicit FinishingTimesTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& node(std::size_t id) const { return nodes_.at(id); }
  static constexpr std::size_t root() noexcept { return 0; }
  std::size_t size() const noexcept { return nodes_.size(); }

  std::vector<std::size_t> leaves() const;

  /// Node ids on the unique root-to-leaf path whose labels contain
  /// `product`, root first. Stops early if the tree has no matching child.
  std::vector<std::size_t> pathFor(std::size_t product) const;

  /// Indented text, one node per line: `<state> [<products>]`.
  std::string dump(const Wfts& w) const;
  /// Graphviz rendering with edge labels as feature expressions.
  std::string toDot(const Wfts& w) const;

private:
  std::vector<TreeNode> nodes_;
};

/// Breadth-first construction from a DFS order. Each node scans the DFS
/// entries below its own time in decreasing order and adds a child for every
/// entry that still covers products on its path not claimed by an earlier
/// sibling.
FinishingTimesTree buildFinishingTimesTree(const DfsOrder& order, const FeatureModel& fm);

} // namespace wfts
