#include "wfts/classic_graph.hpp"

#include <algorithm>
#include <utility>

namespace wfts {

std::vector<std::vector<std::size_t>> outEdges(const ProjectedWts& g) {
  std::vector<std::vector<std::size_t>> out(g.stateCount());
  for (std::size_t t = 0; t < g.transitions.size(); ++t)
    out[g.transitions[t].source].push_back(t);
  return out;
}

std::vector<StateId> finishingOrder(const ProjectedWts& g) {
  const auto out = outEdges(g);
  std::vector<bool> visited(g.stateCount(), false);
  std::vector<StateId> order;
  order.reserve(g.stateCount());

  // Explicit stack of (state, next out-edge position).
  std::vector<std::pair<StateId, std::size_t>> stack;
  for (StateId root = 0; root < g.stateCount(); ++root) {
    if (visited[root])
      continue;
    visited[root] = true;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [u, pos] = stack.back();
      if (pos < out[u].size()) {
        const StateId v = g.transitions[out[u][pos++]].target;
        if (!visited[v]) {
          visited[v] = true;
          stack.emplace_back(v, 0);
        }
      } else {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }
  return order;
}

std::vector<std::vector<StateId>> kosarajuScc(const ProjectedWts& g) {
  const auto order = finishingOrder(g);
  std::vector<std::vector<StateId>> in(g.stateCount());
  for (const auto& t : g.transitions)
    in[t.target].push_back(t.source);

  std::vector<bool> assigned(g.stateCount(), false);
  std::vector<std::vector<StateId>> components;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (assigned[*it])
      continue;
    std::vector<StateId> component;
    std::vector<StateId> stack = {*it};
    assigned[*it] = true;
    while (!stack.empty()) {
      const StateId u = stack.back();
      stack.pop_back();
      component.push_back(u);
      for (StateId v : in[u]) {
        if (!assigned[v]) {
          assigned[v] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

std::vector<bool> reachableStates(const ProjectedWts& g) {
  const auto out = outEdges(g);
  std::vector<bool> seen(g.stateCount(), false);
  std::vector<StateId> stack;
  for (StateId s : g.initial) {
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const StateId u = stack.back();
    stack.pop_back();
    for (std::size_t t : out[u]) {
      const StateId v = g.transitions[t].target;
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

bool hasInternalEdge(const ProjectedWts& g, const std::vector<StateId>& component) {
  auto member = [&](StateId s) { return std::binary_search(component.begin(), component.end(), s); };
  return std::any_of(g.transitions.begin(), g.transitions.end(),
                     [&](const ProjectedTransition& t) { return member(t.source) && member(t.target); });
}

} // namespace wfts
