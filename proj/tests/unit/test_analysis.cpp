#include <gtest/gtest.h>

#include <json.hpp>

#include "wfts/analysis.hpp"
#include "wfts/errors.hpp"
#include "wfts/model_io.hpp"
#include "wfts/report.hpp"
#include "wfts/validation.hpp"

using namespace wfts;

namespace {

std::optional<Rational> valueOf(const LimitAverageReport& r, std::initializer_list<const char*> features) {
  Product p;
  for (const char* f : features)
    p.bits |= 1U << *r.featureModel.findFeature(f);
  return r.products.at(*r.featureModel.productIndex(p)).value;
}

const ProductResult& resultOf(const LimitAverageReport& r, std::initializer_list<const char*> features) {
  Product p;
  for (const char* f : features)
    p.bits |= 1U << *r.featureModel.findFeature(f);
  return r.products.at(*r.featureModel.productIndex(p));
}

} // namespace

TEST(AnalyzeFamilyTest, TaxiTableOne) {
  const auto r = analyzeFamily(generateTaxi(1), Mode::Max);
  EXPECT_EQ(valueOf(r, {}), Rational(73, 6));
  EXPECT_EQ(valueOf(r, {"L1"}), Rational(73, 6));
  EXPECT_EQ(valueOf(r, {"S"}), Rational(103, 8));
  EXPECT_EQ(valueOf(r, {"T"}), Rational(14));
  EXPECT_EQ(valueOf(r, {"L1", "S"}), Rational(133, 10));
  EXPECT_EQ(valueOf(r, {"L1", "T"}), Rational(14));
  EXPECT_EQ(valueOf(r, {"S", "T"}), Rational(43, 3));
  EXPECT_EQ(valueOf(r, {"L1", "S", "T"}), Rational(73, 5));
}

TEST(AnalyzeFamilyTest, TaxiFullProductWitness) {
  const auto r = analyzeFamily(generateTaxi(1), Mode::Max);
  const auto& full = resultOf(r, {"S", "T", "L1"});
  const std::vector<std::string> expected = {"Pickup-1", "Pickup-2", "Release-1", "Release-ext1", "Pickup-ext1",
                                             "Pickup-1"};
  EXPECT_EQ(full.witness, expected);
}

TEST(AnalyzeFamilyTest, GrantRequestBothModes) {
  const Wfts w = generateGrantRequest();
  const auto max = analyzeFamily(w, Mode::Max);
  for (const auto& p : max.products)
    EXPECT_EQ(p.value, Rational(0));
  const auto min = analyzeFamily(w, Mode::Min);
  EXPECT_EQ(valueOf(min, {}), Rational(0));
  EXPECT_EQ(valueOf(min, {"A"}), Rational(-1, 2));
  EXPECT_EQ(valueOf(min, {"G"}), Rational(-1));
  EXPECT_EQ(valueOf(min, {"G", "A"}), Rational(-1));
  EXPECT_EQ(resultOf(min, {"A"}).witness, (std::vector<std::string>{"s0", "s2", "s0"}));
}

TEST(AnalyzeFamilyTest, AcyclicProductsAreUndefined) {
  const Wfts w = parseModel("features { A }\nstates { a, b, c }\ninit { a }\n"
                            "trans a -> b weight=1\ntrans b -> b [A] weight=2\ntrans c -> c weight=9\n");
  for (const auto& r : {analyzeFamily(w, Mode::Max), analyzeProductBased(w, Mode::Max)}) {
    EXPECT_FALSE(valueOf(r, {}).has_value());
    EXPECT_TRUE(r.products[0].witness.empty());
    // The unreachable self-loop on c never counts.
    EXPECT_EQ(valueOf(r, {"A"}), Rational(2));
  }
}

TEST(AnalyzeFamilyTest, MultipleInitialStates) {
  const Wfts w = parseModel("features { A }\nstates { a, b }\ninit { a, b }\n"
                            "trans a -> a [A] weight=1\ntrans b -> b [!A] weight=5\n");
  const auto r = analyzeFamily(w, Mode::Max);
  EXPECT_EQ(valueOf(r, {}), Rational(5));
  EXPECT_EQ(valueOf(r, {"A"}), Rational(1));
}

TEST(AnalyzeProductBasedTest, AgreesOnBuiltInModels) {
  for (const Wfts& w : {generateTaxi(1), generateTaxi(2), generateGrantRequest(), generateMinepumpLite()})
    for (Mode m : {Mode::Max, Mode::Min}) {
      const auto fam = analyzeFamily(w, m);
      const auto prod = analyzeProductBased(w, m);
      EXPECT_TRUE(compareReports(fam, prod).empty());
      for (std::size_t p = 0; p < fam.products.size(); ++p)
        EXPECT_EQ(fam.products[p].witness, prod.products[p].witness);
    }
}

TEST(TriangleTest, BuiltInModels) {
  for (const Wfts& w : {generateTaxi(1), generateGrantRequest(), generateMinepumpLite()})
    for (Mode m : {Mode::Max, Mode::Min}) {
      const auto issues = checkTriangle(w, m);
      EXPECT_TRUE(issues.empty()) << (issues.empty() ? "" : issues.front().detail);
    }
}

TEST(TriangleTest, RandomModels) {
  for (std::uint64_t seed = 1000; seed < 1150; ++seed)
    for (Mode m : {Mode::Max, Mode::Min}) {
      const auto issues = checkTriangle(generateRandom(seed), m);
      EXPECT_TRUE(issues.empty()) << "seed " << seed << ": " << (issues.empty() ? "" : issues.front().detail);
    }
}

TEST(PropertyTest, ScalingAndShift) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Wfts w = generateRandom(seed);
    for (Mode m : {Mode::Max, Mode::Min}) {
      EXPECT_TRUE(checkScaling(w, m, Rational(3)).empty()) << "seed " << seed;
      EXPECT_TRUE(checkScaling(w, m, Rational(1, 7)).empty()) << "seed " << seed;
      EXPECT_TRUE(checkShift(w, m, Rational(4)).empty()) << "seed " << seed;
      EXPECT_TRUE(checkShift(w, m, Rational(-13, 3)).empty()) << "seed " << seed;
    }
  }
}

TEST(PropertyTest, NonPositiveScaleIsRejected) {
  EXPECT_FALSE(checkScaling(generateGrantRequest(), Mode::Max, Rational(0)).empty());
}

TEST(PropertyTest, FamiliesPartitionProducts) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto fa = runFamilyPipeline(generateRandom(seed), Mode::Max, {.witnesses = false});
    const auto issues = checkPartitions(fa);
    EXPECT_TRUE(issues.empty()) << "seed " << seed << ": " << (issues.empty() ? "" : issues.front().detail);
  }
}

TEST(ValidateModelTest, CleanOnBundledModels) {
  for (const Wfts& w : {generateTaxi(1), generateGrantRequest(), generateMinepumpLite()})
    EXPECT_TRUE(validateModel(w).empty());
}

TEST(DeterminismTest, ParallelRunsRenderIdentically) {
  const RenderOptions noTiming{.timing = false};
  for (const Wfts& w : {generateTaxi(3), generateMinepumpLite()}) {
    const std::string serial = toJson(analyzeFamily(w, Mode::Max), noTiming);
    EXPECT_EQ(toJson(analyzeFamily(w, Mode::Max, {.parallel = true}), noTiming), serial);
    EXPECT_EQ(toJson(analyzeFamily(w, Mode::Max), noTiming), serial);
    const std::string product = toJson(analyzeProductBased(w, Mode::Max), noTiming);
    EXPECT_EQ(toJson(analyzeProductBased(w, Mode::Max, {.parallel = true}), noTiming), product);
  }
}

TEST(CompareReportsTest, ReportsValueDifferences) {
  const Wfts w = generateGrantRequest();
  auto a = analyzeFamily(w, Mode::Min);
  auto b = a;
  b.products[1].value = Rational(5);
  b.products[2].value.reset();
  const auto diff = compareReports(a, b);
  ASSERT_EQ(diff.size(), 2u);
  EXPECT_EQ(diff[0].product, 1u);
  EXPECT_EQ(diff[0].actual, Rational(5));
  EXPECT_FALSE(diff[1].actual.has_value());
}

// --- rendering ---------------------------------------------------------------

TEST(ReportJsonTest, SchemaAndFieldOrder) {
  const auto r = analyzeFamily(generateTaxi(1), Mode::Max);
  const auto doc = nlohmann::ordered_json::parse(toJson(r));
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items())
    keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"mode", "products", "families", "timing"}));
  EXPECT_EQ(doc["mode"], "max");
  ASSERT_EQ(doc["products"].size(), 8u);

  const auto& first = doc["products"][0];
  std::vector<std::string> fields;
  for (const auto& [k, v] : first.items())
    fields.push_back(k);
  EXPECT_EQ(fields, (std::vector<std::string>{"features", "value", "decimal", "witness"}));
  EXPECT_EQ(first["features"].size(), 0u);
  EXPECT_EQ(first["value"], "73/6");
  EXPECT_EQ(first["decimal"], "12.17");
  EXPECT_TRUE(first["witness"].is_array());
  EXPECT_TRUE(doc["timing"].contains("family_ms"));

  std::set<std::string> families;
  for (const auto& f : doc["families"])
    families.insert(f["value"].get<std::string>());
  EXPECT_EQ(families.size(), 6u);
}

TEST(ReportJsonTest, UndefinedProductsRenderAsNulls) {
  const Wfts w = parseModel("features { A }\nstates { a }\ninit { a }\ntrans a -> a [A] weight=1\n");
  const auto doc = nlohmann::json::parse(toJson(analyzeFamily(w, Mode::Max), {.timing = false}));
  EXPECT_FALSE(doc.contains("timing"));
  EXPECT_EQ(doc["products"][0]["value"], "undefined");
  EXPECT_TRUE(doc["products"][0]["decimal"].is_null());
  EXPECT_TRUE(doc["products"][0]["witness"].is_null());
}

TEST(ReportJsonTest, ExtraTimingsAreMerged) {
  const Wfts w = generateGrantRequest();
  const auto fam = analyzeFamily(w, Mode::Max);
  const auto prod = analyzeProductBased(w, Mode::Max);
  const auto doc = nlohmann::json::parse(toJson(fam, {}, {&prod}));
  EXPECT_TRUE(doc["timing"].contains("family_ms"));
  EXPECT_TRUE(doc["timing"].contains("product_ms"));
}

TEST(ReportJsonTest, ReadBackRoundTrip) {
  const Wfts w = generateTaxi(1);
  const auto r = analyzeFamily(w, Mode::Max);
  const auto back = reportFromJson(toJson(r), w.featureModel());
  EXPECT_EQ(back.mode, Mode::Max);
  EXPECT_TRUE(compareReports(r, back).empty());
}

TEST(ReportJsonTest, ReadBackRejectsMalformedReports) {
  const FeatureModel fm({"A"});
  EXPECT_THROW(reportFromJson("{", fm), ModelError);
  EXPECT_THROW(reportFromJson(R"({"mode":"avg","products":[]})", fm), ModelError);
  EXPECT_THROW(reportFromJson(R"({"mode":"max","products":[{"features":[],"value":"1/1"}]})", fm), ModelError);
  EXPECT_THROW(reportFromJson(R"({"mode":"max","products":[{"features":["Z"],"value":"1"}]})", fm), ModelError);
  EXPECT_THROW(
      reportFromJson(R"({"mode":"max","products":[{"features":[],"value":"x"},{"features":["A"],"value":"1"}]})", fm),
      ModelError);
  EXPECT_NO_THROW(reportFromJson(
      R"({"mode":"min","products":[{"features":[],"value":"undefined"},{"features":["A"],"value":"3/2"}]})", fm));
}

TEST(ReportTableTest, TaxiRowsToTwoDecimals) {
  const std::string table = toTable(analyzeFamily(generateTaxi(1), Mode::Max));
  for (const char* s : {"12.17", "12.88", "14.00", "13.30", "14.33", "14.60", "product", "max.", "cycle"})
    EXPECT_NE(table.find(s), std::string::npos) << s;
  EXPECT_EQ(table.find("\x1b["), std::string::npos);
  EXPECT_NE(toTable(analyzeFamily(generateTaxi(1), Mode::Max), {.color = true}).find("\x1b[1m"), std::string::npos);
}

TEST(ReportCsvTest, HeaderAndQuoting) {
  const std::string csv = toCsv(analyzeFamily(generateTaxi(1), Mode::Max));
  EXPECT_EQ(csv.rfind("product,value,decimal,witness\n", 0), 0u);
  EXPECT_NE(csv.find("\"{S,T,L1}\",73/5,14.60,"), std::string::npos) << csv;
  EXPECT_NE(csv.find("{},73/6,12.17,"), std::string::npos);
}

TEST(FormatTest, ValuesAndDecimals) {
  EXPECT_EQ(formatValue(Rational(73, 6)), "73/6");
  EXPECT_EQ(formatValue(std::nullopt), "undefined");
  EXPECT_EQ(formatDecimal(Rational(103, 8)), "12.88");
  EXPECT_EQ(formatDecimal(Rational(-1, 2)), "-0.50");
}
