/// @file  mean_cycle.hpp
/// @brief Maximum/minimum mean-weight cycles: feature-aware Karp, classic Karp and a brute-force oracle

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "wfts/feature_algebra.hpp"
#include "wfts/rational.hpp"
#include "wfts/symbolic_scc.hpp"
#include "wfts/wfts.hpp"

namespace wfts {

enum class Mode { Max, Min };

const char* toString(Mode mode);

/// A rational extended with -inf and +inf.
class Extended {
public:
  enum class Kind { NegInf, Finite, PosInf };

  constexpr Extended() = default;
  Extended(Rational value) : kind_(Kind::Finite), value_(value) {} // NOLINT(implicit)

  static Extended negInf() { return Extended(Kind::NegInf); }
  static Extended posInf() { return Extended(Kind::PosInf); }

  Kind kind() const noexcept { return kind_; }
  bool finite() const noexcept { return kind_ == Kind::Finite; }
  /// Requires finite().
  const Rational& value() const { return value_; }

  friend Extended operator+(const Extended& a, const Rational& w) { return a.finite() ? Extended(a.value_ + w) : a; }
  friend bool operator==(const Extended& a, const Extended& b) {
    return a.kind_ == b.kind_ && (!a.finite() || a.value_ == b.value_);
  }
  friend bool operator<(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_)
      return a.kind_ < b.kind_;
    return a.finite() && a.value_ < b.value_;
  }

private:
  explicit Extended(Kind k) : kind_(k) {}
  Kind kind_ = Kind::NegInf;
  Rational value_;
};

/// Orientation helper: in Max mode "better" means larger and the unreachable
/// value is -inf; Min mode mirrors both.
struct Objective {
  Mode mode = Mode::Max;

  bool better(const Extended& a, const Extended& b) const { return mode == Mode::Max ? b < a : a < b; }
  Extended worst() const { return mode == Mode::Max ? Extended::negInf() : Extended::posInf(); }
  Extended unbounded() const { return mode == Mode::Max ? Extended::posInf() : Extended::negInf(); }
};

/// A value defined piecewise on a partition of `context`.
class PartitionedValue {
public:
  struct Cell {
    ProductSet products;
    Extended value;
  };

  PartitionedValue() = default;
  /// One cell covering the context (none if the context is empty).
  PartitionedValue(ProductSet context, Extended initial);

  const ProductSet& context() const noexcept { return context_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }

  /// Value at a product of the context. Throws std::out_of_range otherwise.
  const Extended& at(std::size_t product) const;

  /// Splits every cell overlapping `region` for which `replace(old, candidate)`
  /// holds: the overlap takes `candidate`, the rest keeps the old value.
  template <typename Replace>
  void refine(const ProductSet& region, const Extended& candidate, Replace replace) {
    bool changed = false;
    const std::size_t count = cells_.size();
    for (std::size_t i = 0; i < count; ++i) {
      if (!replace(cells_[i].value, candidate) || !cells_[i].products.intersects(region))
        continue;
      changed = true;
      if (cells_[i].products.isSubsetOf(region)) {
        cells_[i].value = candidate;
        continue;
      }
      ProductSet hit = cells_[i].products & region;
      cells_[i].products -= region;
      cells_.push_back({std::move(hit), candidate});
    }
    if (changed)
      coalesce(candidate);
  }

  /// Cells pairwise disjoint, nonempty, and covering the context exactly.
  bool isPartition() const;

private:
  /// Merges all cells holding `value` into the first of them. Other cells
  /// already carry pairwise distinct values.
  void coalesce(const Extended& value);

  ProductSet context_;
  std::vector<Cell> cells_;
};

/// D[k][v] of the feature-aware Karp recursion for one symbolic SCC.
struct KarpTable {
  StateId source = 0;
  /// Number of states belonging to the SCC for at least one product.
  std::size_t n = 0;
  /// table[k][v], context = SCC members of v (empty, with no cells, for non-members).
  std::vector<std::vector<PartitionedValue>> table;
};

/// Fills D over walks of length 0..n starting at the SCC anchor. The model
/// must be unit-length.
KarpTable buildKarpTable(const SymbolicScc& scc, const Wfts& w, Mode mode);

/// Best cycle mean inside the SCC, as a partition of the SCC's products.
/// Products for which the SCC holds no cycle map to the worst value.
PartitionedValue meanCycleScc(const SymbolicScc& scc, const Wfts& w, Mode mode);

/// Classic Karp over the subgraph induced by `component` (unit-length edges),
/// using `component.front()` as the source and walks of up to
/// `component.size()` edges. Returns nullopt if the subgraph has no edge.
std::optional<Rational> classicKarp(const ProjectedWts& g, const std::vector<StateId>& component, Mode mode);

/// The classic table D[k][v] for k = 0..n over the induced subgraph.
std::vector<std::vector<Extended>> classicKarpTable(const ProjectedWts& g, const std::vector<StateId>& component,
                                                    StateId source, std::size_t n, Mode mode);

/// Best mean weight (sum of weights over sum of lengths) among all simple
/// cycles using only `allowed` states (all states if empty). Throws
/// std::length_error above `maxStates` states.
std::optional<Rational> bruteForceMeanCycle(const ProjectedWts& g, Mode mode, const std::vector<bool>& allowed = {},
                                            std::size_t maxStates = 24);

/// The lexicographically least simple cycle (by state index, rotated to start
/// at its smallest state, greedy) among those in `allowed` states whose mean
/// equals `value`. The result repeats the first state at the end.
std::optional<std::vector<StateId>> witnessCycle(const ProjectedWts& g, const std::vector<bool>& allowed,
                                                 const Rational& value, Mode mode);

} // namespace wfts
