// Cycle means of hand-picked transition subsets, evaluated with classic Karp.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wfts/classic_graph.hpp"
#include "wfts/mean_cycle.hpp"
#include "wfts/wfts.hpp"

namespace wfts::testkit {

/// Index of the first transition from `source` to `target` (by state name).
inline std::size_t transitionIndex(const Wfts& w, const std::string& source, const std::string& target) {
  for (std::size_t t = 0; t < w.transitions().size(); ++t) {
    const auto& tr = w.transitions()[t];
    if (w.stateName(tr.source) == source && w.stateName(tr.target) == target)
      return t;
  }
  throw std::out_of_range("no transition " + source + " -> " + target);
}

/// Keeps only the listed transitions (guards dropped), expands lengths and
/// returns the best classic-Karp value over the non-trivial SCCs.
inline std::optional<Rational> restrictedKarp(const Wfts& w, const std::vector<std::pair<std::string, std::string>>& edges,
                                              Mode mode) {
  std::vector<Transition> kept;
  for (const auto& [s, t] : edges) {
    Transition tr = w.transitions()[transitionIndex(w, s, t)];
    tr.guard = FeatureExpr::top();
    kept.push_back(tr);
  }
  const Wfts sub = expandLengths(Wfts(FeatureModel(), w.states(), w.initial(), kept));
  const ProjectedWts g = project(sub, std::size_t{0});
  const Objective obj{mode};
  std::optional<Rational> best;
  for (const auto& component : kosarajuScc(g))
    if (auto v = classicKarp(g, component, mode); v && (!best || obj.better(Extended(*v), Extended(*best))))
      best = v;
  return best;
}

} // namespace wfts::testkit
