/// @file  validation.hpp
/// @brief Cross-checks between the symbolic pipeline, the per-product baseline and brute force

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wfts/analysis.hpp"

namespace wfts {

enum class Check {
  Triangle,       ///< family = product = brute force, per product
  DfsOrder,       ///< consecutive times, per-state disjoint cover of px
  TreeShape,      ///< the five finishing-times tree conditions
  SccEquivalence, ///< symbolic SCCs projected = Kosaraju partition
  Partition,      ///< every partitioned value covers its context disjointly
  KarpTable,      ///< symbolic D[k][v] at p = classic table of the projection
  Scaling,        ///< positive weight scaling scales values, keeps witnesses
  Shift,          ///< unit-step weight shift shifts values
};

const char* toString(Check check);

struct Issue {
  Check check;
  /// Product index, when the issue concerns one product.
  std::optional<std::size_t> product;
  std::string detail;
};

struct ValidationOptions {
  bool triangle = true;
  bool structure = true;
  bool karpTables = true;
  bool scaling = true;
  bool shifting = true;
  /// Factor for the scaling check (must be positive) and constant for the shift check.
  Rational scaleFactor{7, 3};
  Rational shiftDelta{-5, 2};
};

/// Runs the selected checks for both modes and returns every violation found.
std::vector<Issue> validateModel(const Wfts& w, const ValidationOptions& options = {});

// Individual checks; each returns its violations (empty means pass).

std::vector<Issue> checkTriangle(const Wfts& w, Mode mode);
std::vector<Issue> checkDfsOrder(const DfsOrder& order, const Wfts& unitModel);
std::vector<Issue> checkFinishingTree(const FinishingTimesTree& tree, const Wfts& unitModel);
std::vector<Issue> checkSccTree(const SymbolicSccTree& sccs, const Wfts& unitModel);
std::vector<Issue> checkPartitions(const FamilyAnalysis& analysis);
std::vector<Issue> checkKarpTables(const FamilyAnalysis& analysis, Mode mode);
std::vector<Issue> checkScaling(const Wfts& w, Mode mode, const Rational& factor);
std::vector<Issue> checkShift(const Wfts& w, Mode mode, const Rational& delta);

/// Brute-force limit-average value of one product: best simple-cycle mean
/// over the reachable part of the unexpanded projection.
std::optional<Rational> bruteForceValue(const Wfts& w, std::size_t product, Mode mode);

} // namespace wfts
