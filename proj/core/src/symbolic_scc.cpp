#include "wfts/symbolic_scc.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace wfts {

std::vector<StateId> SymbolicScc::statesFor(std::size_t product) const {
  std::vector<StateId> out;
  for (StateId s = 0; s < members.size(); ++s)
    if (members[s].contains(product))
      out.push_back(s);
  return out;
}

std::size_t SymbolicScc::span() const {
  return static_cast<std::size_t>(
      std::count_if(members.begin(), members.end(), [](const ProductSet& p) { return !p.empty(); }));
}

Wfts transpose(const Wfts& w) {
  std::vector<Transition> reversed = w.transitions();
  for (auto& t : reversed)
    std::swap(t.source, t.target);
  return Wfts(w.featureModel(), w.states(), w.initial(), std::move(reversed));
}

SymbolicScc visitDfsForScc(StateId anchor, const ProductSet& lambda0,
                           const std::vector<ProductSet>& assigned, const Wfts& transposed) {
  const auto& fm = transposed.featureModel();
  SymbolicScc scc;
  scc.members.assign(transposed.stateCount(), fm.none());
  scc.anchor = anchor;
  scc.anchorProducts = lambda0;
  scc.members[anchor] = lambda0;

  // (state, products, next edge). Edges already yielding nothing stay barren
  // because members[] only grows, so the cursor never has to rewind.
  std::vector<std::tuple<StateId, ProductSet, std::size_t>> stack;
  stack.emplace_back(anchor, lambda0, 0);
  while (!stack.empty()) {
    auto& [s, px, pos] = stack.back();
    const auto& out = transposed.outgoing(s);
    bool pushed = false;
    while (pos < out.size()) {
      const std::size_t t = out[pos++];
      const StateId next = transposed.transitions()[t].target;
      ProductSet fresh = (px & transposed.guardSet(t)) - scc.members[next] - assigned[next];
      if (fresh.empty())
        continue;
      scc.members[next] |= fresh;
      stack.emplace_back(next, std::move(fresh), 0);
      pushed = true;
      break;
    }
    if (!pushed)
      stack.pop_back();
  }

  scc.cyclic = fm.none();
  for (std::size_t t = 0; t < transposed.transitions().size(); ++t) {
    const auto& tr = transposed.transitions()[t];
    scc.cyclic |= scc.members[tr.source] & scc.members[tr.target] & transposed.guardSet(t);
  }
  return scc;
}

SymbolicSccTree symbolicSccs(const FinishingTimesTree& tree, const Wfts& w) {
  const auto& fm = w.featureModel();
  const Wfts transposed = transpose(w);
  std::vector<std::optional<SymbolicScc>> rc(tree.size());
  std::vector<bool> visited(tree.size(), false);

  struct Item {
    std::size_t node;
    StateId state;
    ProductSet lambda;
  };
  std::vector<Item> nodesToExplore;
  // Restoring R' on pop: a component's members are disjoint from the
  // assigned sets it was computed against, so subtracting them undoes it.
  // Each entry names the node whose component must be withdrawn, if any.
  std::vector<std::optional<std::size_t>> reachabilityStack;
  std::vector<ProductSet> assigned(w.stateCount(), fm.none());

  for (std::size_t first : tree.node(FinishingTimesTree::root()).children) {
    nodesToExplore.push_back({first, tree.node(first).state, tree.node(first).edgeLabel});
    reachabilityStack.emplace_back();

    while (!nodesToExplore.empty()) {
      const Item& top = nodesToExplore.back();
      const std::size_t u = top.node;
      if (!visited[u]) {
        visited[u] = true;
        ProductSet fresh = top.lambda - assigned[top.state];
        if (!fresh.empty()) {
          SymbolicScc scc = visitDfsForScc(top.state, fresh, assigned, transposed);
          for (StateId s = 0; s < w.stateCount(); ++s)
            assigned[s] |= scc.members[s];
          rc[u] = std::move(scc);
          reachabilityStack.back() = u;
        }
      }

      const auto& children = tree.node(u).children;
      auto unvisited = std::find_if(children.begin(), children.end(),
                                    [&](std::size_t c) { return !visited[c]; });
      if (unvisited == children.end()) {
        nodesToExplore.pop_back();
        if (const auto added = reachabilityStack.back())
          for (StateId s = 0; s < w.stateCount(); ++s)
            assigned[s] -= rc[*added]->members[s];
        reachabilityStack.pop_back();
      } else {
        const std::size_t v = *unvisited;
        ProductSet lambda = top.lambda & tree.node(v).edgeLabel;
        reachabilityStack.emplace_back();
        nodesToExplore.push_back({v, tree.node(v).state, std::move(lambda)});
      }
    }
  }

  const bool balanced = nodesToExplore.empty() && reachabilityStack.empty() &&
                        std::all_of(assigned.begin(), assigned.end(), [](const ProductSet& a) { return a.empty(); });
  return SymbolicSccTree(tree, std::move(rc), balanced);
}

std::vector<std::size_t> SymbolicSccTree::componentNodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (components_[i])
      out.push_back(i);
  return out;
}

std::vector<const SymbolicScc*> SymbolicSccTree::componentsFor(std::size_t product) const {
  std::vector<const SymbolicScc*> out;
  for (std::size_t node : tree_.pathFor(product)) {
    const auto& c = components_[node];
    if (c && c->anchorProducts.contains(product))
      out.push_back(&*c);
  }
  return out;
}

std::vector<std::vector<StateId>> SymbolicSccTree::partitionFor(std::size_t product) const {
  std::vector<std::vector<StateId>> out;
  for (const auto* c : componentsFor(product))
    out.push_back(c->statesFor(product));
  return out;
}

std::string SymbolicSccTree::dump(const Wfts& w) const {
  std::ostringstream out;
  const auto& fm = w.featureModel();
  for (std::size_t leaf : tree_.leaves()) {
    std::vector<std::size_t> path;
    for (std::size_t n = leaf; n != TreeNode::npos; n = tree_.node(n).parent)
      path.push_back(n);
    std::reverse(path.begin(), path.end());
    out << "path [" << describe(tree_.node(leaf).pathProducts, fm).toString() << "]\n";
    for (std::size_t n : path) {
      const auto& c = components_[n];
      if (!c)
        continue;
      out << "  scc @" << w.stateName(c->anchor) << (c->trivial() ? " (trivial)" : "") << ":";
      for (StateId s = 0; s < c->members.size(); ++s)
        if (!c->members[s].empty())
          out << " " << w.stateName(s) << "[" << describe(c->members[s], fm).toString() << "]";
      out << "\n";
    }
  }
  return out.str();
}

} // namespace wfts
