/// @file  symbolic_scc.hpp
/// @brief Strongly connected components for all products, one set per finishing-times path

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wfts/symbolic_search.hpp"
#include "wfts/wfts.hpp"

namespace wfts {

/// One symbolic SCC: `members[s]` holds the products for which state `s`
/// belongs to the component.
struct SymbolicScc {
  std::vector<ProductSet> members;
  StateId anchor = 0;
  /// Products the search started with; equals members[anchor].
  ProductSet anchorProducts;
  /// Products for which some transition stays inside the component.
  ProductSet cyclic;

  bool trivial() const noexcept { return cyclic.empty(); }
  /// States in the component for one product, ascending.
  std::vector<StateId> statesFor(std::size_t product) const;
  /// Number of states that belong to the component for at least one product.
  std::size_t span() const;
};

/// Same states and guards with every transition reversed.
Wfts transpose(const Wfts& w);

/// Products of `lambda0` under which each state reaches `anchor` in the
/// original graph (i.e. is reachable in `transposed`), never entering a state
/// for products already covered by `assigned`.
SymbolicScc visitDfsForScc(StateId anchor, const ProductSet& lambda0,
                           const std::vector<ProductSet>& assigned, const Wfts& transposed);

class SymbolicSccTree {
public:
  SymbolicSccTree(FinishingTimesTree tree, std::vector<std::optional<SymbolicScc>> components,
                  bool stacksBalanced)
      : tree_(std::move(tree)), components_(std::move(components)), stacksBalanced_(stacksBalanced) {}

  const FinishingTimesTree& tree() const noexcept { return tree_; }
  /// The component computed at a tree node, if any.
  const std::optional<SymbolicScc>& at(std::size_t node) const { return components_.at(node); }
  /// Tree nodes carrying a component, in tree-node order.
  std::vector<std::size_t> componentNodes() const;

  /// Components along the product's path that contain it, in path order.
  std::vector<const SymbolicScc*> componentsFor(std::size_t product) const;
  /// The SCC partition of the product's projection, each part sorted.
  std::vector<std::vector<StateId>> partitionFor(std::size_t product) const;

  /// Both internal stacks were empty when the walk finished.
  bool stacksBalanced() const noexcept { return stacksBalanced_; }

  /// Per leaf path: its products and the components along it.
  std::string dump(const Wfts& w) const;

private:
  FinishingTimesTree tree_;
  std::vector<std::optional<SymbolicScc>> components_;
  bool stacksBalanced_;
};

/// Walks every root-to-leaf path of the tree depth-first, threading the
/// set of already-assigned (state, products) pairs, and starts a new
/// component wherever a node's state is still unassigned for some product
/// on its path.
SymbolicSccTree symbolicSccs(const FinishingTimesTree& tree, const Wfts& w);

} // namespace wfts
