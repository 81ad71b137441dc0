#include <gtest/gtest.h>

#include "wfts/classic_graph.hpp"
#include "wfts/errors.hpp"
#include "wfts/mean_cycle.hpp"
#include "wfts/model_io.hpp"
#include "wfts/symbolic_scc.hpp"

using namespace wfts;

namespace {

std::size_t productIndex(const Wfts& w, std::initializer_list<const char*> features) {
  Product p;
  for (const char* f : features)
    p.bits |= 1U << *w.featureModel().findFeature(f);
  return *w.featureModel().productIndex(p);
}

} // namespace

TEST(WftsTest, ValidatesStructure) {
  const FeatureModel fm({"A"});
  EXPECT_THROW(Wfts(fm, {"a", "a"}, {0}, {}), ModelError);
  EXPECT_THROW(Wfts(fm, {"a"}, {}, {}), ModelError);
  EXPECT_THROW(Wfts(fm, {"a"}, {1}, {}), ModelError);
  EXPECT_THROW(Wfts(fm, {"a"}, {0}, {{0, "x", 3, FeatureExpr(), Rational(1), 1}}), ModelError);
  EXPECT_THROW(Wfts(fm, {"a"}, {0}, {{0, "x", 0, FeatureExpr(), Rational(1), 0}}), ModelError);
  EXPECT_THROW(Wfts(fm, {"a"}, {0}, {{0, "x", 0, FeatureExpr::var("B"), Rational(1), 1}}), ModelError);
}

TEST(ProjectTest, GrantRequestEmptyProductIsolatesS2) {
  const Wfts w = generateGrantRequest();
  const ProjectedWts g = project(w, productIndex(w, {}));
  EXPECT_EQ(g.stateCount(), 4u);
  for (const auto& t : g.transitions) {
    EXPECT_NE(t.source, 2u);
    EXPECT_NE(t.target, 2u);
  }
}

TEST(ProjectTest, AllTrueGuardsGiveIdentity) {
  const Wfts w = parseModel("features { A }\nstates { a, b }\ninit { a }\n"
                            "trans a -> b weight=1\ntrans b -> a action=back weight=2 length=2\n");
  for (std::size_t p = 0; p < 2; ++p) {
    const ProjectedWts g = project(w, p);
    ASSERT_EQ(g.transitions.size(), 2u);
    EXPECT_EQ(g.transitions[1].action, "back");
    EXPECT_EQ(g.transitions[1].length, 2u);
  }
}

TEST(ProjectTest, ExplicitProductAndInvalidProduct) {
  const Wfts w = parseModel("features { A, B }\nconstraint A\nstates { a }\ninit { a }\ntrans a -> a [B] weight=1\n");
  EXPECT_EQ(project(w, Product{0b11}).transitions.size(), 1u);
  EXPECT_EQ(project(w, Product{0b01}).transitions.size(), 0u);
  EXPECT_THROW(project(w, Product{0b10}), ModelError);
}

TEST(ProjectTest, TransitionCountMatchesGuardMembership) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Wfts w = generateRandom(seed);
    for (std::size_t p = 0; p < w.featureModel().productCount(); ++p) {
      std::size_t expected = 0;
      for (std::size_t t = 0; t < w.transitions().size(); ++t)
        expected += w.guardSet(t).contains(p);
      EXPECT_EQ(project(w, p).transitions.size(), expected);
    }
  }
}

TEST(ExpandLengthsTest, ChainCarriesWeightOnFirstHop) {
  const Wfts w = parseModel("features { }\nstates { P1, AR }\ninit { P1 }\n"
                            "trans P1 -> AR action=go weight=40 length=3\n");
  const Wfts e = expandLengths(w);
  ASSERT_EQ(e.stateCount(), 4u);
  ASSERT_EQ(e.transitions().size(), 3u);
  EXPECT_EQ(e.stateName(2), "P1->AR#0.1");
  EXPECT_EQ(e.stateName(3), "P1->AR#0.2");
  std::vector<Rational> weights;
  for (const auto& t : e.transitions()) {
    weights.push_back(t.weight);
    EXPECT_EQ(t.length, 1u);
  }
  EXPECT_EQ(weights, (std::vector<Rational>{40, 0, 0}));
  EXPECT_EQ(e.transitions()[0].action, "go");
  EXPECT_EQ(e.stateName(e.transitions()[2].target), "AR");
  EXPECT_TRUE(e.unitLength());
}

TEST(ExpandLengthsTest, UnitModelIsUnchanged) {
  const Wfts w = generateGrantRequest();
  EXPECT_TRUE(expandLengths(w) == w);
}

TEST(ExpandLengthsTest, TaxiEmptyProductCycle) {
  const Wfts e = expandLengths(generateTaxi(1));
  const ProjectedWts g = project(e, std::size_t{0});
  // Airport-P -> Release-2 -> Pickup-2 -> Airport-R -> Airport-P, six unit edges.
  std::vector<StateId> component;
  for (const char* s : {"Airport-P", "Release-2", "Pickup-2", "Airport-R"})
    component.push_back(*e.findState(s));
  for (StateId s = 8; s < e.stateCount(); ++s) {
    const std::string& name = e.stateName(s);
    if (name.rfind("Airport-P->Release-2", 0) == 0 || name.rfind("Pickup-2->Airport-R", 0) == 0)
      component.push_back(s);
  }
  EXPECT_EQ(component.size(), 6u);
  EXPECT_EQ(classicKarp(g, component, Mode::Max), Rational(73, 6));
}

TEST(ExpandLengthsTest, PreservesBestCycleMean) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Wfts w = generateRandom(seed);
    const Wfts e = expandLengths(w);
    for (std::size_t p = 0; p < w.featureModel().productCount(); ++p)
      for (Mode m : {Mode::Max, Mode::Min})
        EXPECT_EQ(bruteForceMeanCycle(project(w, p), m), bruteForceMeanCycle(project(e, p), m, {}, 64))
            << "seed " << seed << " product " << p;
  }
}

TEST(SymbolicReachableTest, GrantRequest) {
  const Wfts w = generateGrantRequest();
  const auto reach = symbolicReachable(w);
  const auto& fm = w.featureModel();
  EXPECT_EQ(reach[0], fm.all());
  EXPECT_EQ(reach[2], denote(parseFeatureExpr("G || A"), fm));
  EXPECT_EQ(reach[1], fm.all());
  EXPECT_EQ(reach[3], fm.all());
}

TEST(SymbolicReachableTest, TaxiExtStatesNeedLicense) {
  const Wfts w = generateTaxi(2);
  const auto reach = symbolicReachable(w);
  const auto& fm = w.featureModel();
  for (StateId s = 0; s < w.stateCount(); ++s) {
    const std::string& name = w.stateName(s);
    if (name.find("ext") == std::string::npos)
      EXPECT_EQ(reach[s], fm.all()) << name;
    else
      EXPECT_EQ(reach[s], denote(FeatureExpr::var("L" + name.substr(name.size() - 1)), fm)) << name;
  }
}

TEST(SymbolicReachableTest, AgreesWithClassicReachability) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Wfts w = generateRandom(seed);
    const auto reach = symbolicReachable(w);
    for (std::size_t p = 0; p < w.featureModel().productCount(); ++p) {
      const auto classic = reachableStates(project(w, p));
      for (StateId s = 0; s < w.stateCount(); ++s)
        EXPECT_EQ(reach[s].contains(p), classic[s]) << "seed " << seed;
    }
  }
}

TEST(TransposeTest, TwiceIsIdentity) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Wfts w = generateRandom(seed);
    EXPECT_TRUE(transpose(transpose(w)) == w);
  }
}

TEST(MapWeightsTest, AppliesFunctionPerTransition) {
  const Wfts w = generateGrantRequest();
  const Wfts doubled = mapWeights(w, [](const Transition& t) { return t.weight * 2; });
  for (std::size_t t = 0; t < w.transitions().size(); ++t)
    EXPECT_EQ(doubled.transitions()[t].weight, w.transitions()[t].weight * 2);
}

TEST(WftsTest, ActionsInFirstUseOrder) {
  EXPECT_EQ(generateGrantRequest().actions(), (std::vector<std::string>{"request", "grant", "clean", "serve"}));
}
