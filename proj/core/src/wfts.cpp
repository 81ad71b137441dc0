#include "wfts/wfts.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "wfts/errors.hpp"

namespace wfts {

Wfts::Wfts(FeatureModel featureModel, std::vector<std::string> states, std::vector<StateId> initial,
           std::vector<Transition> transitions)
    : featureModel_(std::move(featureModel)), states_(std::move(states)),
      initial_(std::move(initial)), transitions_(std::move(transitions)) {
  std::unordered_set<std::string> seen;
  for (const auto& name : states_) {
    if (name.empty())
      throw ModelError("empty state name");
    if (!seen.insert(name).second)
      throw ModelError("duplicate state '" + name + "'");
  }
  if (initial_.empty())
    throw ModelError("no initial state");
  for (StateId s : initial_)
    if (s >= states_.size())
      throw ModelError("initial state index out of range");

  outgoing_.resize(states_.size());
  incoming_.resize(states_.size());
  guardSets_.reserve(transitions_.size());
  for (std::size_t t = 0; t < transitions_.size(); ++t) {
    const auto& tr = transitions_[t];
    if (tr.source >= states_.size() || tr.target >= states_.size())
      throw ModelError("transition " + std::to_string(t) + " has an undeclared endpoint");
    if (tr.length == 0)
      throw ModelError("transition " + std::to_string(t) + " has length 0");
    guardSets_.push_back(denote(tr.guard, featureModel_));
    outgoing_[tr.source].push_back(t);
    incoming_[tr.target].push_back(t);
  }
}

std::optional<StateId> Wfts::findState(std::string_view name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end())
    return std::nullopt;
  return static_cast<StateId>(it - states_.begin());
}

std::vector<std::string> Wfts::actions() const {
  std::vector<std::string> out;
  for (const auto& t : transitions_)
    if (std::find(out.begin(), out.end(), t.action) == out.end())
      out.push_back(t.action);
  return out;
}

bool Wfts::unitLength() const {
  return std::all_of(transitions_.begin(), transitions_.end(),
                     [](const Transition& t) { return t.length == 1; });
}

bool operator==(const Wfts& a, const Wfts& b) {
  return a.featureModel_ == b.featureModel_ && a.states_ == b.states_ &&
         a.initial_ == b.initial_ && a.transitions_ == b.transitions_;
}

ProjectedWts project(const Wfts& w, std::size_t product) {
  if (product >= w.featureModel().productCount())
    throw ModelError("product index out of range");
  ProjectedWts out;
  out.states = w.states();
  out.initial = w.initial();
  const auto& trans = w.transitions();
  for (std::size_t t = 0; t < trans.size(); ++t)
    if (w.guardSet(t).contains(product))
      out.transitions.push_back({trans[t].source, trans[t].action, trans[t].target,
                                 trans[t].weight, trans[t].length});
  return out;
}

ProjectedWts project(const Wfts& w, Product product) {
  auto idx = w.featureModel().productIndex(product);
  if (!idx)
    throw ModelError("invalid product " + w.featureModel().formatProduct(product));
  return project(w, *idx);
}

Wfts expandLengths(const Wfts& w) {
  std::vector<std::string> states = w.states();
  std::vector<Transition> out;
  const auto& trans = w.transitions();
  for (std::size_t t = 0; t < trans.size(); ++t) {
    const auto& tr = trans[t];
    if (tr.length == 1) {
      out.push_back(tr);
      continue;
    }
    const std::string prefix =
        w.stateName(tr.source) + "->" + w.stateName(tr.target) + "#" + std::to_string(t) + ".";
    StateId from = tr.source;
    for (std::uint32_t hop = 1; hop <= tr.length; ++hop) {
      StateId to = tr.target;
      if (hop < tr.length) {
        to = states.size();
        states.push_back(prefix + std::to_string(hop));
      }
      Transition unit;
      unit.source = from;
      unit.target = to;
      unit.action = hop == 1 ? tr.action : "tau";
      unit.guard = hop == 1 ? tr.guard : FeatureExpr::top();
      unit.weight = hop == 1 ? tr.weight : Rational(0);
      out.push_back(std::move(unit));
      from = to;
    }
  }
  return Wfts(w.featureModel(), std::move(states), w.initial(), std::move(out));
}

std::vector<ProductSet> symbolicReachable(const Wfts& w) {
  const auto& fm = w.featureModel();
  std::vector<ProductSet> reach(w.stateCount(), fm.none());
  std::deque<StateId> work;
  for (StateId s : w.initial()) {
    reach[s] = fm.all();
    work.push_back(s);
  }
  while (!work.empty()) {
    const StateId u = work.front();
    work.pop_front();
    for (std::size_t t : w.outgoing(u)) {
      const StateId v = w.transitions()[t].target;
      ProductSet fresh = (reach[u] & w.guardSet(t)) - reach[v];
      if (fresh.empty())
        continue;
      reach[v] |= fresh;
      work.push_back(v);
    }
  }
  return reach;
}

Wfts mapWeights(const Wfts& w, const std::function<Rational(const Transition&)>& f) {
  std::vector<Transition> trans = w.transitions();
  for (auto& t : trans)
    t.weight = f(t);
  return Wfts(w.featureModel(), w.states(), w.initial(), std::move(trans));
}

} // namespace wfts
