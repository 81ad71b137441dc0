#include "wfts/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "wfts/classic_graph.hpp"

namespace wfts {

const char* toString(Strategy strategy) { return strategy == Strategy::Family ? "family" : "product"; }

namespace {

using Clock = std::chrono::steady_clock;

double millisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Runs body(i) for i in [0, count). With `parallel`, indices are handed out
/// to hardware threads; callers write into per-index slots only.
template <typename Body>
void forEachIndex(std::size_t count, bool parallel, Body body) {
  const std::size_t workers = parallel ? std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency())) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t k = 0; k < workers; ++k) {
    pool.emplace_back([&, k] {
      try {
        for (std::size_t i = next++; i < count; i = next++)
          body(i);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& t : pool)
    t.join();
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
}

Wfts unitModel(const Wfts& w) { return w.unitLength() ? w : expandLengths(w); }

std::vector<std::string> witnessFor(const Wfts& expanded, std::size_t originalStates, std::size_t product,
                                    const Rational& value, Mode mode) {
  const ProjectedWts g = project(expanded, product);
  const auto cycle = witnessCycle(g, reachableStates(g), value, mode);
  std::vector<std::string> names;
  if (!cycle)
    return names;
  for (StateId s : *cycle)
    if (s < originalStates)
      names.push_back(expanded.stateName(s));
  return names;
}

void finishReport(LimitAverageReport& report, const Wfts& expanded, std::size_t originalStates,
                  const AnalysisOptions& options) {
  const auto& fm = report.featureModel;
  if (options.witnesses) {
    forEachIndex(report.products.size(), options.parallel, [&](std::size_t p) {
      auto& r = report.products[p];
      if (r.value)
        r.witness = witnessFor(expanded, originalStates, p, *r.value, report.mode);
    });
  }

  for (std::size_t p = 0; p < report.products.size(); ++p) {
    const auto& value = report.products[p].value;
    auto same = std::find_if(report.families.begin(), report.families.end(),
                             [&](const FamilyResult& f) { return f.value == value; });
    if (same == report.families.end()) {
      FamilyResult f{fm.none(), FeatureExpr::bottom(), value};
      f.products.insert(p);
      report.families.push_back(std::move(f));
    } else {
      same->products.insert(p);
    }
  }
  for (auto& f : report.families)
    f.expr = describe(f.products, fm);
}

LimitAverageReport emptyReport(const Wfts& w, Mode mode, Strategy strategy) {
  LimitAverageReport report{mode, strategy, w.featureModel(), {}, {}, 0.0};
  for (const Product& p : w.featureModel().products())
    report.products.push_back({p, std::nullopt, {}});
  return report;
}

} // namespace

FamilyAnalysis runFamilyPipeline(const Wfts& w, Mode mode, const AnalysisOptions& options) {
  const auto start = Clock::now();
  const Objective obj{mode};
  Wfts expanded = unitModel(w);
  const auto& fm = expanded.featureModel();

  DfsOrder order = dfsFts(expanded);
  FinishingTimesTree tree = buildFinishingTimesTree(order, fm);
  SymbolicSccTree sccs = symbolicSccs(tree, expanded);

  std::vector<std::size_t> cyclicNodes;
  for (std::size_t node : sccs.componentNodes())
    if (!sccs.at(node)->trivial())
      cyclicNodes.push_back(node);

  std::vector<PartitionedValue> values(cyclicNodes.size());
  forEachIndex(cyclicNodes.size(), options.parallel,
               [&](std::size_t i) { values[i] = meanCycleScc(*sccs.at(cyclicNodes[i]), expanded, mode); });

  // A component is reachable under a product exactly when its anchor is.
  const auto reachable = symbolicReachable(expanded);
  PartitionedValue combined(fm.all(), obj.worst());
  auto better = [&](const Extended& old, const Extended& cand) { return obj.better(cand, old); };
  for (std::size_t i = 0; i < cyclicNodes.size(); ++i) {
    const ProductSet& live = reachable[sccs.at(cyclicNodes[i])->anchor];
    for (const auto& cell : values[i].cells()) {
      if (!cell.value.finite())
        continue;
      ProductSet region = cell.products & live;
      if (!region.empty())
        combined.refine(region, cell.value, better);
    }
  }

  LimitAverageReport report = emptyReport(w, mode, Strategy::Family);
  for (const auto& cell : combined.cells()) {
    if (!cell.value.finite())
      continue;
    for (std::size_t p = cell.products.first(); p != ProductSet::npos; p = cell.products.next(p))
      report.products[p].value = cell.value.value();
  }
  finishReport(report, expanded, w.stateCount(), options);
  report.elapsedMs = millisSince(start);

  std::vector<std::pair<std::size_t, PartitionedValue>> cycleValues;
  for (std::size_t i = 0; i < cyclicNodes.size(); ++i)
    cycleValues.emplace_back(cyclicNodes[i], std::move(values[i]));
  return {std::move(expanded), std::move(order), std::move(tree), std::move(sccs), std::move(cycleValues),
          std::move(report)};
}

LimitAverageReport analyzeFamily(const Wfts& w, Mode mode, const AnalysisOptions& options) {
  return runFamilyPipeline(w, mode, options).report;
}

LimitAverageReport analyzeProductBased(const Wfts& w, Mode mode, const AnalysisOptions& options) {
  const auto start = Clock::now();
  const Objective obj{mode};
  const Wfts expanded = unitModel(w);
  LimitAverageReport report = emptyReport(w, mode, Strategy::Product);

  forEachIndex(report.products.size(), options.parallel, [&](std::size_t p) {
    const ProjectedWts g = project(expanded, p);
    const auto reach = reachableStates(g);
    Extended best = obj.worst();
    for (const auto& component : kosarajuScc(g)) {
      if (!reach[component.front()])
        continue;
      if (auto value = classicKarp(g, component, mode); value && obj.better(Extended(*value), best))
        best = Extended(*value);
    }
    if (best.finite())
      report.products[p].value = best.value();
  });

  finishReport(report, expanded, w.stateCount(), options);
  report.elapsedMs = millisSince(start);
  return report;
}

std::vector<ReportMismatch> compareReports(const LimitAverageReport& expected, const LimitAverageReport& actual) {
  std::vector<ReportMismatch> out;
  const std::size_t n = std::max(expected.products.size(), actual.products.size());
  for (std::size_t p = 0; p < n; ++p) {
    std::optional<Rational> e = p < expected.products.size() ? expected.products[p].value : std::nullopt;
    std::optional<Rational> a = p < actual.products.size() ? actual.products[p].value : std::nullopt;
    const bool sameProduct = p < expected.products.size() && p < actual.products.size() &&
                             expected.products[p].product.bits == actual.products[p].product.bits;
    if (e != a || !sameProduct)
      out.push_back({p, e, a});
  }
  return out;
}

} // namespace wfts
