#include <gtest/gtest.h>

#include <map>

#include "wfts/classic_graph.hpp"
#include "wfts/model_io.hpp"
#include "wfts/symbolic_search.hpp"
#include "wfts/validation.hpp"

using namespace wfts;

namespace {

/// Finishing rank (1-based) of every state for one product.
std::map<std::string, std::size_t> ranksFor(const DfsOrder& order, const Wfts& w, std::size_t product) {
  std::map<std::string, std::size_t> ranks;
  std::size_t rank = 0;
  for (const auto& e : order.entries())
    if (e.products.contains(product))
      ranks[w.stateName(e.state)] = ++rank;
  return ranks;
}

std::vector<std::string> pathStates(const FinishingTimesTree& tree, const Wfts& w, std::size_t leafParentChild) {
  std::vector<std::string> out;
  for (std::size_t n = leafParentChild;;) {
    out.push_back(w.stateName(tree.node(n).state));
    if (tree.node(n).children.empty())
      break;
    n = tree.node(n).children.front();
  }
  return out;
}

std::size_t product(const Wfts& w, std::uint32_t bits) { return *w.featureModel().productIndex(Product{bits}); }

} // namespace

TEST(DfsFtsTest, GrantRequestFinishingTimes) {
  const Wfts w = generateGrantRequest();
  const DfsOrder order = dfsFts(w);
  const auto& fm = w.featureModel();

  // Features G (bit 0) and A (bit 1).
  const auto none = ranksFor(order, w, product(w, 0));
  EXPECT_EQ(none.at("s0"), 3u);
  EXPECT_EQ(none.at("s2"), 4u);
  for (std::uint32_t bits : {1u, 2u, 3u}) {
    const auto r = ranksFor(order, w, product(w, bits));
    EXPECT_EQ(r.at("s0"), 4u) << fm.formatProduct(Product{bits});
    EXPECT_EQ(r.at("s2"), 3u);
  }
}

TEST(DfsFtsTest, TimesConsecutiveAndPerStateCover) {
  const Wfts w = generateGrantRequest();
  const DfsOrder order = dfsFts(w);
  EXPECT_TRUE(checkDfsOrder(order, w).empty());
  for (std::size_t t = 1; t <= order.size(); ++t)
    EXPECT_EQ(order.at(t).time, t);
}

TEST(DfsFtsTest, FeaturelessModelIsClassicDfs) {
  const Wfts w = parseModel("features { }\nstates { a, b, c, d }\ninit { a }\n"
                            "trans a -> b weight=0\ntrans b -> c weight=0\ntrans c -> a weight=0\ntrans d -> b weight=0\n");
  const DfsOrder order = dfsFts(w);
  ASSERT_EQ(order.size(), 4u);
  const auto classic = finishingOrder(project(w, std::size_t{0}));
  for (std::size_t i = 0; i < 4; ++i)
    EXPECT_EQ(order.entries()[i].state, classic[i]);
}

TEST(DfsFtsTest, EveryStateFinishesOncePerProduct) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const Wfts w = expandLengths(generateRandom(seed));
    const DfsOrder order = dfsFts(w);
    std::size_t total = 0;
    for (const auto& e : order.entries())
      total += e.products.count();
    EXPECT_EQ(total, w.stateCount() * w.featureModel().productCount()) << "seed " << seed;
    EXPECT_TRUE(checkDfsOrder(order, w).empty()) << "seed " << seed;
  }
}

TEST(DfsFtsTest, Deterministic) {
  const Wfts w = expandLengths(generateTaxi(2));
  const DfsOrder a = dfsFts(w), b = dfsFts(w);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.entries()[i].state, b.entries()[i].state);
    EXPECT_EQ(a.entries()[i].products, b.entries()[i].products);
  }
}

TEST(FinishingTreeTest, GrantRequestReproducesTwoBranchTree) {
  const Wfts w = generateGrantRequest();
  const auto& fm = w.featureModel();
  const FinishingTimesTree tree = buildFinishingTimesTree(dfsFts(w), fm);
  const auto& root = tree.node(FinishingTimesTree::root());
  ASSERT_EQ(root.children.size(), 2u);

  const ProductSet grantOrAbort = denote(parseFeatureExpr("G || A"), fm);
  std::map<bool, std::vector<std::string>> branches;
  for (std::size_t c : root.children) {
    const ProductSet& label = tree.node(c).edgeLabel;
    ASSERT_TRUE(label == grantOrAbort || label == grantOrAbort.complement());
    branches[label == grantOrAbort] = pathStates(tree, w, c);
  }
  EXPECT_EQ(branches[true], (std::vector<std::string>{"s0", "s2", "s1", "s3"}));
  EXPECT_EQ(branches[false], (std::vector<std::string>{"s2", "s0", "s1", "s3"}));
  EXPECT_TRUE(checkFinishingTree(tree, w).empty());
}

TEST(FinishingTreeTest, FeaturelessModelGivesSinglePath) {
  const Wfts w = parseModel("features { }\nstates { a, b, c }\ninit { a }\ntrans a -> b weight=0\ntrans c -> a weight=1\n");
  const FinishingTimesTree tree = buildFinishingTimesTree(dfsFts(w), w.featureModel());
  EXPECT_EQ(tree.size(), 4u);
  ASSERT_EQ(tree.leaves().size(), 1u);
  EXPECT_EQ(tree.node(tree.leaves().front()).depth, 3u);
}

TEST(FinishingTreeTest, TaxiSatisfiesAllConditions) {
  const Wfts w = expandLengths(generateTaxi(1));
  const FinishingTimesTree tree = buildFinishingTimesTree(dfsFts(w), w.featureModel());
  EXPECT_LE(tree.leaves().size(), 8u);
  const auto issues = checkFinishingTree(tree, w);
  EXPECT_TRUE(issues.empty()) << (issues.empty() ? "" : issues.front().detail);
}

TEST(FinishingTreeTest, RandomModelsSatisfyAllConditions) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Wfts w = expandLengths(generateRandom(seed));
    const FinishingTimesTree tree = buildFinishingTimesTree(dfsFts(w), w.featureModel());
    const auto issues = checkFinishingTree(tree, w);
    EXPECT_TRUE(issues.empty()) << "seed " << seed << ": " << (issues.empty() ? "" : issues.front().detail);
    EXPECT_LE(tree.leaves().size(), w.featureModel().productCount());
  }
}

TEST(FinishingTreeTest, PathForFollowsProduct) {
  const Wfts w = generateGrantRequest();
  const FinishingTimesTree tree = buildFinishingTimesTree(dfsFts(w), w.featureModel());
  for (std::size_t p = 0; p < w.featureModel().productCount(); ++p) {
    const auto path = tree.pathFor(p);
    ASSERT_EQ(path.size(), 5u);
    EXPECT_EQ(path.front(), FinishingTimesTree::root());
    EXPECT_TRUE(tree.node(path.back()).pathProducts.contains(p));
  }
}

TEST(FinishingTreeTest, DumpAndDotMentionStates) {
  const Wfts w = generateGrantRequest();
  const FinishingTimesTree tree = buildFinishingTimesTree(dfsFts(w), w.featureModel());
  const std::string dump = tree.dump(w);
  EXPECT_NE(dump.find("s2 [!G && !A]"), std::string::npos) << dump;
  const std::string dot = tree.toDot(w);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("s3"), std::string::npos);
}
