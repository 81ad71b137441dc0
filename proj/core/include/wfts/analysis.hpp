/// @file  analysis.hpp
/// @brief Per-product limit-average analysis: family-based pipeline and product-based baseline

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wfts/mean_cycle.hpp"
#include "wfts/symbolic_scc.hpp"
#include "wfts/symbolic_search.hpp"
#include "wfts/wfts.hpp"

namespace wfts {

enum class Strategy { Family, Product };

const char* toString(Strategy strategy);

struct AnalysisOptions {
  /// Compute an example optimal cycle per product.
  bool witnesses = true;
  /// Spread independent SCCs (family) or products (product) over threads.
  bool parallel = false;
};

struct ProductResult {
  Product product;
  /// Unset when no cycle is reachable under the product.
  std::optional<Rational> value;
  /// Original state names along an optimal cycle, first state repeated at the end.
  std::vector<std::string> witness;
};

struct FamilyResult {
  ProductSet products;
  FeatureExpr expr;
  std::optional<Rational> value;
};

struct LimitAverageReport {
  Mode mode = Mode::Max;
  Strategy strategy = Strategy::Family;
  FeatureModel featureModel;
  /// One entry per valid product, in canonical product order.
  std::vector<ProductResult> products;
  /// Products grouped by equal value, ordered by their first product.
  std::vector<FamilyResult> families;
  double elapsedMs = 0.0;
};

/// Every intermediate structure of the family-based pipeline.
struct FamilyAnalysis {
  Wfts expanded;
  DfsOrder order;
  FinishingTimesTree tree;
  SymbolicSccTree sccs;
  /// Tree node id and the best-cycle partition of its SCC (non-trivial SCCs only).
  std::vector<std::pair<std::size_t, PartitionedValue>> cycleValues;
  LimitAverageReport report;
};

/// Symbolic DFS, finishing-times tree, symbolic SCCs and feature-aware Karp
/// per SCC, combined with symbolic reachability. Length-expands `w` first if
/// needed; witnesses name the original states only.
FamilyAnalysis runFamilyPipeline(const Wfts& w, Mode mode, const AnalysisOptions& options = {});

LimitAverageReport analyzeFamily(const Wfts& w, Mode mode, const AnalysisOptions& options = {});

/// Projects every valid product and runs Kosaraju plus classic Karp on each
/// reachable non-trivial SCC.
LimitAverageReport analyzeProductBased(const Wfts& w, Mode mode, const AnalysisOptions& options = {});

struct ReportMismatch {
  std::size_t product;
  std::optional<Rational> expected;
  std::optional<Rational> actual;
};

/// Per-product value differences (witnesses and timings are ignored).
std::vector<ReportMismatch> compareReports(const LimitAverageReport& expected, const LimitAverageReport& actual);

} // namespace wfts
