/// @file  classic_graph.hpp
/// @brief Single-product graph algorithms: DFS finishing order, Kosaraju SCCs, reachability

#pragma once

#include <vector>

#include "wfts/wfts.hpp"

namespace wfts {

/// Out-edge lists (transition indices) in declaration order.
std::vector<std::vector<std::size_t>> outEdges(const ProjectedWts& g);

/// States listed in increasing finishing time of a depth-first search that
/// visits roots and out-edges in declaration order.
std::vector<StateId> finishingOrder(const ProjectedWts& g);

/// Kosaraju's algorithm over the canonical DFS order. Components are listed
/// in the order they are discovered; members are sorted ascending.
std::vector<std::vector<StateId>> kosarajuScc(const ProjectedWts& g);

/// States reachable from an initial state.
std::vector<bool> reachableStates(const ProjectedWts& g);

/// True iff some transition has both endpoints in `component`.
bool hasInternalEdge(const ProjectedWts& g, const std::vector<StateId>& component);

} // namespace wfts
