#include "wfts/mean_cycle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "wfts/classic_graph.hpp"

namespace wfts {

const char* toString(Mode mode) { return mode == Mode::Max ? "max" : "min"; }

// ---------------------------------------------------------------------------
// PartitionedValue
// ---------------------------------------------------------------------------

PartitionedValue::PartitionedValue(ProductSet context, Extended initial) : context_(std::move(context)) {
  if (!context_.empty())
    cells_.push_back({context_, initial});
}

const Extended& PartitionedValue::at(std::size_t product) const {
  for (const auto& cell : cells_)
    if (cell.products.contains(product))
      return cell.value;
  throw std::out_of_range("product outside the partition context");
}

bool PartitionedValue::isPartition() const {
  ProductSet seen(context_.universe());
  for (const auto& cell : cells_) {
    if (cell.products.empty() || cell.products.intersects(seen))
      return false;
    seen |= cell.products;
  }
  return seen == context_;
}

void PartitionedValue::coalesce(const Extended& value) {
  auto first = std::find_if(cells_.begin(), cells_.end(), [&](const Cell& c) { return c.value == value; });
  if (first == cells_.end())
    return;
  auto out = std::next(first);
  for (auto it = std::next(first); it != cells_.end(); ++it) {
    if (it->value == value)
      first->products |= it->products;
    else if (out++ != it)
      *std::prev(out) = std::move(*it);
  }
  cells_.erase(out, cells_.end());
}

// ---------------------------------------------------------------------------
// Feature-aware Karp
// ---------------------------------------------------------------------------

KarpTable buildKarpTable(const SymbolicScc& scc, const Wfts& w, Mode mode) {
  const Objective obj{mode};
  const std::size_t states = w.stateCount();

  KarpTable kt;
  kt.source = scc.anchor;
  kt.n = scc.span();

  // Transitions that stay inside the SCC for at least one product.
  struct Edge {
    StateId from;
    StateId to;
    ProductSet products;
    Rational weight;
  };
  std::vector<Edge> edges;
  for (std::size_t t = 0; t < w.transitions().size(); ++t) {
    const auto& tr = w.transitions()[t];
    if (tr.length != 1)
      throw std::invalid_argument("buildKarpTable requires a unit-length model");
    ProductSet products = w.guardSet(t) & scc.members[tr.source] & scc.members[tr.target];
    if (!products.empty())
      edges.push_back({tr.source, tr.target, std::move(products), tr.weight});
  }

  kt.table.resize(kt.n + 1);
  for (auto& row : kt.table) {
    row.reserve(states);
    for (StateId v = 0; v < states; ++v)
      row.push_back(scc.members[v].empty() ? PartitionedValue() : PartitionedValue(scc.members[v], obj.worst()));
  }
  kt.table[0][kt.source] = PartitionedValue(scc.members[kt.source], Extended(Rational(0)));

  auto better = [&](const Extended& old, const Extended& cand) { return obj.better(cand, old); };
  for (std::size_t k = 1; k <= kt.n; ++k) {
    for (const auto& e : edges) {
      for (const auto& prev : kt.table[k - 1][e.from].cells()) {
        if (!prev.value.finite() || !prev.products.intersects(e.products))
          continue;
        auto& target = kt.table[k][e.to];
        const Extended candidate = prev.value + e.weight;
        const bool improves = std::any_of(target.cells().begin(), target.cells().end(), [&](const auto& cell) {
          return better(cell.value, candidate) && cell.products.intersects(prev.products);
        });
        if (improves)
          target.refine(prev.products & e.products, candidate, better);
      }
    }
  }
  return kt;
}

PartitionedValue meanCycleScc(const SymbolicScc& scc, const Wfts& w, Mode mode) {
  const Objective obj{mode};
  PartitionedValue best(scc.anchorProducts, obj.worst());
  if (scc.trivial())
    return best;

  const KarpTable kt = buildKarpTable(scc, w, mode);
  const std::size_t n = kt.n;
  auto better = [&](const Extended& old, const Extended& cand) { return obj.better(cand, old); };
  // The inner extremum runs the opposite way: min over k in Max mode.
  auto worse = [&](const Extended& old, const Extended& cand) { return obj.better(old, cand); };

  for (StateId v = 0; v < w.stateCount(); ++v) {
    if (scc.members[v].empty())
      continue;
    PartitionedValue m(scc.members[v], obj.unbounded());
    for (std::size_t k = 0; k < n; ++k) {
      for (const auto& last : kt.table[n][v].cells()) {
        if (!last.value.finite())
          continue;
        for (const auto& early : kt.table[k][v].cells()) {
          if (!early.value.finite() || !early.products.intersects(last.products))
            continue;
          const Rational ratio = (last.value.value() - early.value.value()) / static_cast<std::int64_t>(n - k);
          m.refine(last.products & early.products, Extended(ratio), worse);
        }
      }
    }
    for (const auto& cell : m.cells())
      if (cell.value.finite())
        best.refine(cell.products, cell.value, better);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Classic Karp
// ---------------------------------------------------------------------------

std::vector<std::vector<Extended>> classicKarpTable(const ProjectedWts& g, const std::vector<StateId>& component,
                                                    StateId source, std::size_t n, Mode mode) {
  const Objective obj{mode};
  std::vector<bool> member(g.stateCount(), false);
  for (StateId s : component)
    member[s] = true;

  std::vector<std::vector<Extended>> d(n + 1, std::vector<Extended>(g.stateCount(), obj.worst()));
  d[0][source] = Extended(Rational(0));
  for (std::size_t k = 1; k <= n; ++k) {
    for (const auto& t : g.transitions) {
      if (t.length != 1)
        throw std::invalid_argument("classic Karp requires unit-length transitions");
      if (!member[t.source] || !member[t.target] || !d[k - 1][t.source].finite())
        continue;
      const Extended cand = d[k - 1][t.source] + t.weight;
      if (obj.better(cand, d[k][t.target]))
        d[k][t.target] = cand;
    }
  }
  return d;
}

std::optional<Rational> classicKarp(const ProjectedWts& g, const std::vector<StateId>& component, Mode mode) {
  if (component.empty())
    return std::nullopt;
  std::vector<StateId> sorted = component;
  std::sort(sorted.begin(), sorted.end());
  if (!hasInternalEdge(g, sorted))
    return std::nullopt;

  const Objective obj{mode};
  const std::size_t n = component.size();
  const auto d = classicKarpTable(g, component, component.front(), n, mode);

  Extended best = obj.worst();
  for (StateId v : component) {
    if (!d[n][v].finite())
      continue;
    Extended inner = obj.unbounded();
    for (std::size_t k = 0; k < n; ++k) {
      if (!d[k][v].finite())
        continue;
      const Extended ratio((d[n][v].value() - d[k][v].value()) / static_cast<std::int64_t>(n - k));
      if (obj.better(inner, ratio))
        inner = ratio;
    }
    if (inner.finite() && obj.better(inner, best))
      best = inner;
  }
  if (!best.finite())
    return std::nullopt;
  return best.value();
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

std::optional<Rational> bruteForceMeanCycle(const ProjectedWts& g, Mode mode, const std::vector<bool>& allowed,
                                            std::size_t maxStates) {
  if (g.stateCount() > maxStates)
    throw std::length_error("brute-force cycle enumeration limited to " + std::to_string(maxStates) + " states");
  const Objective obj{mode};
  const auto out = outEdges(g);
  auto ok = [&](StateId s) { return allowed.empty() || allowed[s]; };

  Extended best = obj.worst();
  std::vector<bool> onPath(g.stateCount(), false);

  // Cycles are enumerated once each: rooted at their smallest state, all
  // other states larger. Parallel edges give distinct cycles.
  std::function<void(StateId, StateId, Rational, std::int64_t)> extend =
      [&](StateId root, StateId u, Rational weight, std::int64_t length) {
        for (std::size_t t : out[u]) {
          const auto& tr = g.transitions[t];
          const StateId v = tr.target;
          if (!ok(v))
            continue;
          const Rational w = weight + tr.weight;
          const std::int64_t len = length + tr.length;
          if (v == root) {
            const Extended mean(w / len);
            if (obj.better(mean, best))
              best = mean;
          } else if (v > root && !onPath[v]) {
            onPath[v] = true;
            extend(root, v, w, len);
            onPath[v] = false;
          }
        }
      };

  for (StateId root = 0; root < g.stateCount(); ++root) {
    if (!ok(root))
      continue;
    onPath[root] = true;
    extend(root, root, Rational(0), 0);
    onPath[root] = false;
  }
  if (!best.finite())
    return std::nullopt;
  return best.value();
}

// ---------------------------------------------------------------------------
// Witness cycles
// ---------------------------------------------------------------------------

std::optional<std::vector<StateId>> witnessCycle(const ProjectedWts& g, const std::vector<bool>& allowed,
                                                 const Rational& value, Mode mode) {
  const std::size_t n = g.stateCount();
  auto ok = [&](StateId s) { return allowed.empty() || allowed[s]; };
  const std::int64_t sense = mode == Mode::Max ? 1 : -1;

  // Shifted weights make optimal cycles exactly the zero-weight cycles, with
  // no positive cycle anywhere; longest-path potentials then expose them as
  // cycles of tight edges.
  std::vector<Rational> shifted(g.transitions.size());
  for (std::size_t t = 0; t < g.transitions.size(); ++t) {
    const auto& tr = g.transitions[t];
    shifted[t] = Rational(sense) * (tr.weight - value * static_cast<std::int64_t>(tr.length));
  }
  std::vector<Rational> potential(n, Rational(0));
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (std::size_t t = 0; t < g.transitions.size(); ++t) {
      const auto& tr = g.transitions[t];
      if (!ok(tr.source) || !ok(tr.target))
        continue;
      if (potential[tr.source] + shifted[t] > potential[tr.target]) {
        potential[tr.target] = potential[tr.source] + shifted[t];
        changed = true;
      }
    }
    if (!changed)
      break;
  }

  std::vector<std::vector<StateId>> tight(n);
  for (std::size_t t = 0; t < g.transitions.size(); ++t) {
    const auto& tr = g.transitions[t];
    if (ok(tr.source) && ok(tr.target) && potential[tr.source] + shifted[t] == potential[tr.target])
      tight[tr.source].push_back(tr.target);
  }
  for (auto& succ : tight) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }

  // Can `target` be reached from `from` without entering a `blocked` state?
  auto reaches = [&](StateId from, StateId target, const std::vector<bool>& blocked) {
    if (from == target)
      return true;
    std::vector<bool> seen = blocked;
    std::vector<StateId> stack = {from};
    seen[from] = true;
    while (!stack.empty()) {
      const StateId u = stack.back();
      stack.pop_back();
      for (StateId v : tight[u]) {
        if (v == target)
          return true;
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return false;
  };

  const std::vector<bool> none(n, false);
  for (StateId start = 0; start < n; ++start) {
    if (!ok(start))
      continue;
    bool onCycle = false;
    for (StateId v : tight[start])
      if (reaches(v, start, none)) {
        onCycle = true;
        break;
      }
    if (!onCycle)
      continue;

    std::vector<StateId> cycle = {start};
    std::vector<bool> used(n, false);
    used[start] = true;
    StateId cur = start;
    for (;;) {
      const auto& succ = tight[cur];
      if (std::binary_search(succ.begin(), succ.end(), start)) {
        cycle.push_back(start);
        return cycle;
      }
      bool advanced = false;
      for (StateId c : succ) {
        if (used[c])
          continue;
        std::vector<bool> blocked = used;
        blocked[start] = false;
        if (reaches(c, start, blocked)) {
          cycle.push_back(c);
          used[c] = true;
          cur = c;
          advanced = true;
          break;
        }
      }
      if (!advanced)
        return std::nullopt;
    }
  }
  return std::nullopt;
}

} // namespace wfts
