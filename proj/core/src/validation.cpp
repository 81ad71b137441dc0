#include "wfts/validation.hpp"

#include <algorithm>

#include "wfts/classic_graph.hpp"

namespace wfts {

const char* toString(Check check) {
  switch (check) {
  case Check::Triangle: return "triangle";
  case Check::DfsOrder: return "dfs-order";
  case Check::TreeShape: return "tree";
  case Check::SccEquivalence: return "scc";
  case Check::Partition: return "partition";
  case Check::KarpTable: return "karp-table";
  case Check::Scaling: return "scaling";
  case Check::Shift: return "shift";
  }
  return "?";
}

namespace {

std::string show(const std::optional<Rational>& v) { return v ? toFractionString(*v) : "undefined"; }

std::string show(const Extended& v) {
  switch (v.kind()) {
  case Extended::Kind::NegInf: return "-inf";
  case Extended::Kind::PosInf: return "+inf";
  default: return toFractionString(v.value());
  }
}

std::string showStates(const Wfts& w, const std::vector<StateId>& states) {
  std::string out = "(";
  for (std::size_t i = 0; i < states.size(); ++i)
    out += (i ? "," : "") + w.stateName(states[i]);
  return out + ")";
}

Wfts unitModel(const Wfts& w) { return w.unitLength() ? w : expandLengths(w); }

void append(std::vector<Issue>& into, std::vector<Issue> more) {
  into.insert(into.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

} // namespace

std::optional<Rational> bruteForceValue(const Wfts& w, std::size_t product, Mode mode) {
  const ProjectedWts g = project(w, product);
  return bruteForceMeanCycle(g, mode, reachableStates(g));
}

std::vector<Issue> checkTriangle(const Wfts& w, Mode mode) {
  std::vector<Issue> issues;
  const auto family = analyzeFamily(w, mode);
  const auto product = analyzeProductBased(w, mode, {.witnesses = false});
  const auto& fm = w.featureModel();

  for (std::size_t p = 0; p < fm.productCount(); ++p) {
    const auto brute = bruteForceValue(w, p, mode);
    const auto& f = family.products[p];
    const auto& pr = product.products[p];
    if (f.value != brute || pr.value != brute) {
      issues.push_back({Check::Triangle, p,
                        std::string(toString(mode)) + ": family " + show(f.value) + ", product " + show(pr.value) +
                            ", brute force " + show(brute)});
      continue;
    }

    // A witness must be a closed walk of the projection.
    if (f.value.has_value() != !f.witness.empty()) {
      issues.push_back({Check::Triangle, p, "witness presence does not match value definedness"});
      continue;
    }
    if (f.witness.empty())
      continue;
    const ProjectedWts g = project(w, p);
    bool closed = f.witness.size() >= 2 && f.witness.front() == f.witness.back();
    for (std::size_t i = 0; closed && i + 1 < f.witness.size(); ++i) {
      const auto a = w.findState(f.witness[i]);
      const auto b = w.findState(f.witness[i + 1]);
      closed = a && b && std::any_of(g.transitions.begin(), g.transitions.end(), [&](const ProjectedTransition& t) {
                 return t.source == *a && t.target == *b;
               });
    }
    if (!closed)
      issues.push_back({Check::Triangle, p, "witness is not a cycle of the product"});
  }
  return issues;
}

std::vector<Issue> checkDfsOrder(const DfsOrder& order, const Wfts& w) {
  std::vector<Issue> issues;
  const auto& fm = w.featureModel();
  std::vector<ProductSet> covered(w.stateCount(), fm.none());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& e = order.entries()[i];
    if (e.time != i + 1)
      issues.push_back({Check::DfsOrder, std::nullopt, "entry " + std::to_string(i) + " has time " +
                                                            std::to_string(e.time)});
    if (e.products.empty())
      issues.push_back({Check::DfsOrder, std::nullopt, "entry at time " + std::to_string(e.time) + " is empty"});
    if (e.products.intersects(covered[e.state]))
      issues.push_back({Check::DfsOrder, std::nullopt, w.stateName(e.state) + " finishes twice for a product"});
    covered[e.state] |= e.products;
  }
  for (StateId s = 0; s < w.stateCount(); ++s)
    if (!covered[s].full())
      issues.push_back({Check::DfsOrder, std::nullopt, w.stateName(s) + " never finishes for some product"});
  return issues;
}

std::vector<Issue> checkFinishingTree(const FinishingTimesTree& tree, const Wfts& w) {
  std::vector<Issue> issues;
  const auto& fm = w.featureModel();
  const std::size_t states = w.stateCount();

  for (std::size_t leaf : tree.leaves())
    if (tree.node(leaf).depth != states)
      issues.push_back({Check::TreeShape, std::nullopt,
                        "leaf at depth " + std::to_string(tree.node(leaf).depth) + ", expected " +
                            std::to_string(states)});

  for (std::size_t leaf : tree.leaves()) {
    std::vector<bool> seen(states, false);
    for (std::size_t n = leaf; !tree.node(n).isRoot(); n = tree.node(n).parent) {
      const StateId s = tree.node(n).state;
      if (seen[s]) {
        issues.push_back({Check::TreeShape, std::nullopt, "state " + w.stateName(s) + " repeats on a path"});
        break;
      }
      seen[s] = true;
    }
  }

  for (const auto& node : tree.nodes()) {
    ProductSet union_ = fm.none();
    for (std::size_t c : node.children) {
      if (tree.node(c).edgeLabel.intersects(union_))
        issues.push_back({Check::TreeShape, std::nullopt, "sibling edge labels overlap"});
      union_ |= tree.node(c).edgeLabel;
    }
  }

  // Exactly one depth-i node per product and depth.
  std::vector<std::vector<std::size_t>> hits(states + 1, std::vector<std::size_t>(fm.productCount(), 0));
  for (const auto& node : tree.nodes()) {
    if (node.depth > states)
      continue;
    for (std::size_t p = node.pathProducts.first(); p != ProductSet::npos; p = node.pathProducts.next(p))
      ++hits[node.depth][p];
  }
  for (std::size_t d = 0; d <= states; ++d)
    for (std::size_t p = 0; p < fm.productCount(); ++p)
      if (hits[d][p] != 1)
        issues.push_back({Check::TreeShape, p,
                          std::to_string(hits[d][p]) + " paths at depth " + std::to_string(d) + " cover the product"});

  for (std::size_t p = 0; p < fm.productCount(); ++p) {
    std::vector<StateId> path;
    for (std::size_t n : tree.pathFor(p))
      if (!tree.node(n).isRoot())
        path.push_back(tree.node(n).state);
    std::vector<StateId> expected = finishingOrder(project(w, p));
    std::reverse(expected.begin(), expected.end());
    if (path != expected)
      issues.push_back({Check::TreeShape, p,
                        "path " + showStates(w, path) + " differs from classic DFS order " + showStates(w, expected)});
  }
  return issues;
}

std::vector<Issue> checkSccTree(const SymbolicSccTree& sccs, const Wfts& w) {
  std::vector<Issue> issues;
  if (!sccs.stacksBalanced())
    issues.push_back({Check::SccEquivalence, std::nullopt, "SCC walk left its stacks non-empty"});

  auto render = [&](const std::vector<std::vector<StateId>>& parts) {
    std::string out;
    for (const auto& part : parts)
      out += showStates(w, part);
    return out;
  };
  for (std::size_t p = 0; p < w.featureModel().productCount(); ++p) {
    auto symbolic = sccs.partitionFor(p);
    auto classic = kosarajuScc(project(w, p));
    std::sort(symbolic.begin(), symbolic.end());
    std::sort(classic.begin(), classic.end());
    if (symbolic != classic)
      issues.push_back({Check::SccEquivalence, p, "symbolic " + render(symbolic) + " vs Kosaraju " + render(classic)});
  }
  return issues;
}

std::vector<Issue> checkPartitions(const FamilyAnalysis& analysis) {
  std::vector<Issue> issues;
  for (const auto& [node, value] : analysis.cycleValues)
    if (!value.isPartition() || value.context() != analysis.sccs.at(node)->anchorProducts)
      issues.push_back({Check::Partition, std::nullopt, "cycle values of SCC at node " + std::to_string(node) +
                                                            " do not partition its products"});

  const auto& report = analysis.report;
  const auto& fm = report.featureModel;
  ProductSet seen = fm.none();
  for (const auto& f : report.families) {
    if (f.products.empty() || f.products.intersects(seen))
      issues.push_back({Check::Partition, std::nullopt, "report families overlap or are empty"});
    seen |= f.products;
    if (denote(f.expr, fm) != f.products)
      issues.push_back({Check::Partition, std::nullopt, "family expression " + f.expr.toString() +
                                                            " does not denote its products"});
    for (std::size_t p = f.products.first(); p != ProductSet::npos; p = f.products.next(p))
      if (report.products[p].value != f.value)
        issues.push_back({Check::Partition, p, "family value differs from product value"});
  }
  if (!seen.full())
    issues.push_back({Check::Partition, std::nullopt, "report families do not cover every product"});
  return issues;
}

std::vector<Issue> checkKarpTables(const FamilyAnalysis& analysis, Mode mode) {
  std::vector<Issue> issues;
  const Wfts& w = analysis.expanded;
  for (const auto& [node, cycle] : analysis.cycleValues) {
    const SymbolicScc& scc = *analysis.sccs.at(node);
    const KarpTable kt = buildKarpTable(scc, w, mode);
    for (const auto& row : kt.table)
      for (const auto& cell : row)
        if (!cell.isPartition()) {
          issues.push_back({Check::Partition, std::nullopt, "Karp table cell is not a partition"});
          return issues;
        }

    const ProductSet& products = scc.anchorProducts;
    for (std::size_t p = products.first(); p != ProductSet::npos; p = products.next(p)) {
      const auto component = scc.statesFor(p);
      const ProjectedWts g = project(w, p);
      const auto d = classicKarpTable(g, component, kt.source, kt.n, mode);
      bool same = true;
      for (std::size_t k = 0; k <= kt.n && same; ++k)
        for (StateId v : component)
          if (!(kt.table[k][v].at(p) == d[k][v])) {
            issues.push_back({Check::KarpTable, p,
                              "D[" + std::to_string(k) + "][" + w.stateName(v) + "] = " + show(kt.table[k][v].at(p)) +
                                  ", classic " + show(d[k][v])});
            same = false;
            break;
          }

      const auto classic = classicKarp(g, component, mode);
      const Extended& symbolic = cycle.at(p);
      const bool agree = classic ? symbolic.finite() && symbolic.value() == *classic : !symbolic.finite();
      if (!agree)
        issues.push_back({Check::KarpTable, p, "SCC cycle value " + show(symbolic) + ", classic " + show(classic)});
    }
  }
  return issues;
}

std::vector<Issue> checkScaling(const Wfts& w, Mode mode, const Rational& factor) {
  std::vector<Issue> issues;
  if (factor <= Rational(0)) {
    issues.push_back({Check::Scaling, std::nullopt, "scaling factor must be positive"});
    return issues;
  }
  const Wfts scaledModel = mapWeights(w, [&](const Transition& t) { return t.weight * factor; });
  for (bool family : {true, false}) {
    const AnalysisOptions opts{.witnesses = family};
    const auto base = family ? analyzeFamily(w, mode, opts) : analyzeProductBased(w, mode, opts);
    const auto scaled = family ? analyzeFamily(scaledModel, mode, opts) : analyzeProductBased(scaledModel, mode, opts);
    for (std::size_t p = 0; p < base.products.size(); ++p) {
      const auto& b = base.products[p];
      const auto& s = scaled.products[p];
      const std::optional<Rational> expected = b.value ? std::optional<Rational>(*b.value * factor) : std::nullopt;
      if (s.value != expected)
        issues.push_back({Check::Scaling, p, std::string(family ? "family" : "product") + " value " + show(s.value) +
                                                 ", expected " + show(expected)});
      else if (s.witness != b.witness)
        issues.push_back({Check::Scaling, p, "witness changed under scaling"});
    }
  }
  return issues;
}

std::vector<Issue> checkShift(const Wfts& w, Mode mode, const Rational& delta) {
  std::vector<Issue> issues;
  const Wfts unit = unitModel(w);
  const Wfts shifted = mapWeights(unit, [&](const Transition& t) { return t.weight + delta; });
  const AnalysisOptions opts{.witnesses = false};
  const auto base = analyzeFamily(unit, mode, opts);
  const auto moved = analyzeFamily(shifted, mode, opts);
  for (std::size_t p = 0; p < base.products.size(); ++p) {
    const auto& b = base.products[p].value;
    const std::optional<Rational> expected = b ? std::optional<Rational>(*b + delta) : std::nullopt;
    if (moved.products[p].value != expected)
      issues.push_back({Check::Shift, p, "value " + show(moved.products[p].value) + ", expected " + show(expected)});
  }
  return issues;
}

std::vector<Issue> validateModel(const Wfts& w, const ValidationOptions& options) {
  std::vector<Issue> issues;
  for (Mode mode : {Mode::Max, Mode::Min}) {
    if (options.triangle)
      append(issues, checkTriangle(w, mode));
    if (options.structure || options.karpTables) {
      const FamilyAnalysis analysis = runFamilyPipeline(w, mode, {.witnesses = false});
      if (options.structure) {
        if (mode == Mode::Max) {
          append(issues, checkDfsOrder(analysis.order, analysis.expanded));
          append(issues, checkFinishingTree(analysis.tree, analysis.expanded));
          append(issues, checkSccTree(analysis.sccs, analysis.expanded));
        }
        append(issues, checkPartitions(analysis));
      }
      if (options.karpTables)
        append(issues, checkKarpTables(analysis, mode));
    }
    if (options.scaling)
      append(issues, checkScaling(w, mode, options.scaleFactor));
    if (options.shifting)
      append(issues, checkShift(w, mode, options.shiftDelta));
  }
  return issues;
}

} // namespace wfts
