/// @file  wfts.hpp
/// @brief Weighted featured transition systems and their per-product projections

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wfts/feature_algebra.hpp"
#include "wfts/rational.hpp"

namespace wfts {

using StateId = std::size_t;

struct Transition {
  StateId source = 0;
  std::string action = "tau";
  StateId target = 0;
  FeatureExpr guard;
  Rational weight;
  /// Number of unit steps the transition takes; see expandLengths().
  std::uint32_t length = 1;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// A weighted featured transition system.
///
/// Immutable once constructed. Guards are denoted against the feature model
/// at construction and cached as product sets.
class Wfts {
public:
  /// Throws ModelError if a state name is empty or duplicated, an endpoint
  /// or initial state is out of range, no initial state is given, a length
  /// is zero, or a guard mentions an undeclared feature.
  Wfts(FeatureModel featureModel, std::vector<std::string> states, std::vector<StateId> initial,
       std::vector<Transition> transitions);

  const FeatureModel& featureModel() const noexcept { return featureModel_; }
  const std::vector<std::string>& states() const noexcept { return states_; }
  std::size_t stateCount() const noexcept { return states_.size(); }
  const std::string& stateName(StateId s) const { return states_.at(s); }
  std::optional<StateId> findState(std::string_view name) const;
  const std::vector<StateId>& initial() const noexcept { return initial_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }

  /// Distinct action labels in first-use order.
  std::vector<std::string> actions() const;

  /// ⟦γ(t)⟧ for transition index t.
  const ProductSet& guardSet(std::size_t t) const { return guardSets_.at(t); }
  /// Indices of transitions leaving `s`, in declaration order.
  const std::vector<std::size_t>& outgoing(StateId s) const { return outgoing_.at(s); }
  /// Indices of transitions entering `s`, in declaration order.
  const std::vector<std::size_t>& incoming(StateId s) const { return incoming_.at(s); }

  /// True iff every transition has length 1.
  bool unitLength() const;

  /// Structural equality, including declaration order.
  friend bool operator==(const Wfts& a, const Wfts& b);

private:
  FeatureModel featureModel_;
  std::vector<std::string> states_;
  std::vector<StateId> initial_;
  std::vector<Transition> transitions_;
  std::vector<ProductSet> guardSets_;
  std::vector<std::vector<std::size_t>> outgoing_;
  std::vector<std::vector<std::size_t>> incoming_;
};

struct ProjectedTransition {
  StateId source = 0;
  std::string action;
  StateId target = 0;
  Rational weight;
  std::uint32_t length = 1;

  friend bool operator==(const ProjectedTransition&, const ProjectedTransition&) = default;
};

/// The weighted transition system of a single product; guards erased.
struct ProjectedWts {
  std::vector<std::string> states;
  std::vector<StateId> initial;
  std::vector<ProjectedTransition> transitions;

  std::size_t stateCount() const noexcept { return states.size(); }
};

/// Keeps exactly the transitions whose guard the product satisfies, in order.
/// `product` indexes the feature model's valid products.
ProjectedWts project(const Wfts& w, std::size_t product);

/// As above for an explicit feature assignment. Throws ModelError if the
/// product is not valid under the feature model.
ProjectedWts project(const Wfts& w, Product product);

/// Replaces each transition of length k > 1 by a chain of k unit hops. The
/// first hop keeps the guard, action and full weight; the remaining hops have
/// weight 0 and guard `true`. Intermediate states are appended after the
/// original states and named `<src>-><tgt>#<transition>.<hop>`.
Wfts expandLengths(const Wfts& w);

/// For every state, the products under which it is reachable from an
/// initial state along guard-satisfying transitions.
std::vector<ProductSet> symbolicReachable(const Wfts& w);

/// Copy of `w` with each transition weight replaced by `f(transition)`.
Wfts mapWeights(const Wfts& w, const std::function<Rational(const Transition&)>& f);

} // namespace wfts
