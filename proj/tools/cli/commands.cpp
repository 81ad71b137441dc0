#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "wfts/errors.hpp"
#include "wfts/model_io.hpp"
#include "wfts/report.hpp"
#include "wfts/validation.hpp"

namespace wfts::cli {

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct NamedModel {
  std::string label;
  Wfts model;
};

std::vector<NamedModel> loadModels(const RunConfig& cfg) {
  std::vector<std::string> specs = cfg.generators;
  std::string path = cfg.path;
  // A positional argument that is not an existing file may be a generator spec.
  if (!path.empty() && !std::filesystem::exists(path)) {
    try {
      parseGeneratorSpec(path);
      specs.push_back(path);
      path.clear();
    } catch (const std::invalid_argument&) {
    }
  }
  if (!path.empty() && !specs.empty())
    throw UsageError("give either a model path or --generate, not both");
  if (path.empty() && specs.empty())
    throw UsageError("no model given (path or --generate <spec>)");

  std::vector<NamedModel> models;
  if (!path.empty()) {
    models.push_back({path, loadModel(path)});
    return models;
  }
  for (const auto& text : specs) {
    std::vector<GeneratorSpec> expanded;
    try {
      expanded = parseGeneratorSpec(text);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    for (const auto& spec : expanded)
      models.push_back({spec.label(), generate(spec)});
  }
  return models;
}

NamedModel loadSingle(const RunConfig& cfg) {
  auto models = loadModels(cfg);
  if (models.size() != 1)
    throw UsageError("this command takes exactly one model, got " + std::to_string(models.size()));
  return std::move(models.front());
}

std::string render(const LimitAverageReport& report, const RunConfig& cfg, const Terminal& term,
                   const std::vector<const LimitAverageReport*>& extra = {}) {
  RenderOptions opts;
  opts.color = term.color;
  opts.timing = !cfg.noTiming;
  switch (cfg.format) {
  case Format::Json: return toJson(report, opts, extra);
  case Format::Csv: return toCsv(report, opts);
  case Format::Table: break;
  }
  return toTable(report, opts);
}

double timeMs(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void printMismatches(const std::vector<ReportMismatch>& diff, const FeatureModel& fm, const std::string& left,
                     const std::string& right, std::ostream& err) {
  for (const auto& m : diff) {
    const std::string product = m.product < fm.productCount() ? fm.formatProduct(fm.products()[m.product])
                                                              : "#" + std::to_string(m.product);
    err << "  " << product << ": " << left << " " << formatValue(m.expected) << ", " << right << " "
        << formatValue(m.actual) << "\n";
  }
}

std::string pad(const std::string& s, std::size_t width, bool right = false) {
  if (s.size() >= width)
    return s;
  return right ? std::string(width - s.size(), ' ') + s : s + std::string(width - s.size(), ' ');
}

std::string fixed(double v, int places) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(places) << v;
  return out.str();
}

} // namespace

TimingStats summarize(const std::vector<double>& samples) {
  TimingStats stats;
  if (samples.empty())
    return stats;
  stats.meanMs = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  if (samples.size() > 1 && stats.meanMs > 0.0) {
    double sq = 0.0;
    for (double s : samples)
      sq += (s - stats.meanMs) * (s - stats.meanMs);
    stats.relStddevPct = std::sqrt(sq / static_cast<double>(samples.size() - 1)) / stats.meanMs * 100.0;
  }
  return stats;
}

// ---------------------------------------------------------------------------

int cmdAnalyze(const RunConfig& cfg, Terminal& term) {
  const NamedModel m = loadSingle(cfg);
  const AnalysisOptions opts{.witnesses = true, .parallel = cfg.parallel};

  if (cfg.strategy == StrategyChoice::Product) {
    term.out << render(analyzeProductBased(m.model, cfg.mode, opts), cfg, term);
    return kOk;
  }
  const auto family = analyzeFamily(m.model, cfg.mode, opts);
  if (cfg.strategy == StrategyChoice::Family) {
    term.out << render(family, cfg, term);
    return kOk;
  }

  const auto product = analyzeProductBased(m.model, cfg.mode, opts);
  term.out << render(family, cfg, term, {&product});
  const auto diff = compareReports(family, product);
  if (!diff.empty()) {
    term.err << "error: family-based and product-based results differ on " << diff.size() << " product(s)\n";
    printMismatches(diff, family.featureModel, "family", "product", term.err);
    return kMismatch;
  }
  return kOk;
}

int cmdBench(const RunConfig& cfg, Terminal& term) {
  if (cfg.reps < 1)
    throw UsageError("--reps must be at least 1");
  const auto models = loadModels(cfg);
  const AnalysisOptions opts{.witnesses = false, .parallel = cfg.parallel};

  struct Row {
    std::string label;
    std::size_t features, products, states;
    TimingStats family, product;
    double speedup;
  };
  std::vector<Row> rows;
  int status = kOk;

  for (const auto& m : models) {
    const Wfts& w = m.model;
    // Warm-up run, excluded from the statistics; doubles as the agreement check.
    const auto familyReport = analyzeFamily(w, cfg.mode, opts);
    const auto productReport = analyzeProductBased(w, cfg.mode, opts);
    if (const auto diff = compareReports(familyReport, productReport); !diff.empty()) {
      term.err << "error: " << m.label << ": strategies disagree\n";
      printMismatches(diff, w.featureModel(), "family", "product", term.err);
      status = kMismatch;
    }

    std::vector<double> fam, prod;
    for (unsigned r = 0; r < cfg.reps; ++r) {
      fam.push_back(timeMs([&] { analyzeFamily(w, cfg.mode, opts); }));
      prod.push_back(timeMs([&] { analyzeProductBased(w, cfg.mode, opts); }));
    }
    Row row{m.label, w.featureModel().features().size(), w.featureModel().productCount(),
            expandLengths(w).stateCount(), summarize(fam), summarize(prod), 0.0};
    row.speedup = row.family.meanMs > 0.0 ? row.product.meanMs / row.family.meanMs : 0.0;
    rows.push_back(row);
  }

  if (cfg.format == Format::Json) {
    nlohmann::ordered_json doc;
    doc["mode"] = toString(cfg.mode);
    doc["reps"] = cfg.reps;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows)
      doc["rows"].push_back({{"model", r.label},
                             {"features", r.features},
                             {"products", r.products},
                             {"states", r.states},
                             {"family_ms", r.family.meanMs},
                             {"family_rsd_pct", r.family.relStddevPct},
                             {"product_ms", r.product.meanMs},
                             {"product_rsd_pct", r.product.relStddevPct},
                             {"speedup", r.speedup}});
    term.out << doc.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    term.out << "model,features,products,states,family_ms,family_rsd_pct,product_ms,product_rsd_pct,speedup\n";
    for (const auto& r : rows)
      term.out << r.label << "," << r.features << "," << r.products << "," << r.states << ","
               << fixed(r.family.meanMs, 4) << "," << fixed(r.family.relStddevPct, 2) << ","
               << fixed(r.product.meanMs, 4) << "," << fixed(r.product.relStddevPct, 2) << ","
               << fixed(r.speedup, 3) << "\n";
  } else {
    const char* bold = term.color ? "\x1b[1m" : "";
    const char* reset = term.color ? "\x1b[0m" : "";
    term.out << bold << pad("model", 14) << pad("features", 9, true) << pad("products", 10, true)
             << pad("states", 8, true) << pad("family-based (ms)", 22, true) << pad("product-based (ms)", 22, true)
             << pad("speedup", 9, true) << reset << "\n";
    for (const auto& r : rows) {
      auto cell = [](const TimingStats& s) { return fixed(s.meanMs, 3) + " ± " + fixed(s.relStddevPct, 1) + "%"; };
      term.out << pad(r.label, 14) << pad(std::to_string(r.features), 9, true)
               << pad(std::to_string(r.products), 10, true) << pad(std::to_string(r.states), 8, true)
               << pad(cell(r.family), 22 + 1, true) << pad(cell(r.product), 22 + 1, true)
               << pad(fixed(r.speedup, 2) + "x", 9, true) << "\n";
    }
  }

  for (const auto& r : rows)
    if (r.label.rfind("taxi", 0) == 0 && r.features >= 4 && r.family.meanMs >= r.product.meanMs)
      term.err << "warning: " << r.label << ": family-based analysis (" << fixed(r.family.meanMs, 3)
               << " ms) is not faster than product-based (" << fixed(r.product.meanMs, 3) << " ms)\n";
  return status;
}

int cmdValidate(const RunConfig& cfg, Terminal& term) {
  if (!cfg.expect.empty()) {
    const NamedModel m = loadSingle(cfg);
    std::ifstream in(cfg.expect);
    if (!in)
      throw ModelError("cannot read " + cfg.expect);
    std::stringstream text;
    text << in.rdbuf();
    const auto golden = reportFromJson(text.str(), m.model.featureModel());
    const auto actual = analyzeFamily(m.model, golden.mode, {.witnesses = false, .parallel = cfg.parallel});
    const auto diff = compareReports(golden, actual);
    if (!diff.empty()) {
      term.err << "FAIL " << m.label << " (" << toString(golden.mode) << "): " << diff.size()
               << " product(s) differ from " << cfg.expect << "\n";
      printMismatches(diff, m.model.featureModel(), "expected", "got", term.err);
      return kMismatch;
    }
    term.out << "ok " << m.label << ": all " << actual.products.size() << " products match " << cfg.expect << "\n";
    return kOk;
  }

  std::vector<NamedModel> models;
  if (!cfg.path.empty() || !cfg.generators.empty()) {
    models = loadModels(cfg);
  } else {
    for (const char* spec : {"taxi:1", "grantrequest", "minepump"})
      for (const auto& g : parseGeneratorSpec(spec))
        models.push_back({g.label(), generate(g)});
    for (unsigned i = 0; i < cfg.count; ++i)
      models.push_back({"random:" + std::to_string(cfg.seed + i), generateRandom(cfg.seed + i)});
  }

  std::size_t failed = 0;
  for (const auto& m : models) {
    const auto issues = validateModel(m.model);
    if (issues.empty())
      continue;
    ++failed;
    const auto& fm = m.model.featureModel();
    term.err << "FAIL " << m.label << ": " << issues.size() << " violation(s)\n";
    for (const auto& issue : issues) {
      term.err << "  [" << toString(issue.check) << "]";
      if (issue.product)
        term.err << " product " << fm.formatProduct(fm.products()[*issue.product]);
      term.err << ": " << issue.detail << "\n";
    }
    term.err << "  reproduction model:\n";
    std::istringstream lines(serializeModel(m.model));
    for (std::string line; std::getline(lines, line);)
      term.err << "    " << line << "\n";
  }
  term.out << (failed ? "FAIL" : "ok") << ": " << models.size() - failed << "/" << models.size()
           << " models passed all checks\n";
  return failed ? kMismatch : kOk;
}

int cmdTree(const RunConfig& cfg, Terminal& term) {
  const NamedModel m = loadSingle(cfg);
  const auto analysis = runFamilyPipeline(m.model, cfg.mode, {.witnesses = false});
  if (cfg.dot) {
    term.out << analysis.tree.toDot(analysis.expanded);
    return kOk;
  }
  term.out << "finishing-times tree (" << analysis.tree.size() << " nodes, " << analysis.tree.leaves().size()
           << " leaves)\n"
           << analysis.tree.dump(analysis.expanded) << "\nstrongly connected components\n"
           << analysis.sccs.dump(analysis.expanded);
  return kOk;
}

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, Terminal& term) {
  CLI::App app{"Limit-average analysis of weighted featured transition systems", "wfts"};
  app.require_subcommand(1);

  RunConfig cfg;
  const std::map<std::string, Mode> modes{{"max", Mode::Max}, {"min", Mode::Min}};
  const std::map<std::string, StrategyChoice> strategies{
      {"family", StrategyChoice::Family}, {"product", StrategyChoice::Product}, {"both", StrategyChoice::Both}};
  const std::map<std::string, Format> formats{{"table", Format::Table}, {"json", Format::Json}, {"csv", Format::Csv}};

  auto addSource = [&](CLI::App* sub) {
    sub->add_option("model", cfg.path, "Model file (.wfts) or generator spec");
    sub->add_option("-g,--generate", cfg.generators,
                    "Generator spec: taxi:N, taxi:A..B, grantrequest, minepump, random:SEED")
        ->take_all();
    sub->add_option("-m,--mode", cfg.mode, "max or min")->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    sub->add_option("-f,--format", cfg.format, "table, json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_flag("--parallel", cfg.parallel, "Process independent SCCs or products on several threads");
  };

  auto* analyze = app.add_subcommand("analyze", "Per-product maximum or minimum limit-average values");
  addSource(analyze);
  analyze->add_option("-s,--strategy", cfg.strategy, "family, product or both")
      ->transform(CLI::CheckedTransformer(strategies, CLI::ignore_case));
  analyze->add_flag("--no-timing", cfg.noTiming, "Omit timings from JSON output");

  auto* bench = app.add_subcommand("bench", "Time family-based against product-based analysis");
  addSource(bench);
  bench->add_option("-r,--reps", cfg.reps, "Timed repetitions per strategy")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Cross-check strategies, brute force and structural invariants");
  addSource(validate);
  validate->add_option("--seed", cfg.seed, "First seed of the random batch");
  validate->add_option("--count", cfg.count, "Number of random models when no model is given");
  validate->add_option("--expect", cfg.expect, "Golden JSON report to compare against");

  auto* tree = app.add_subcommand("tree", "Dump the finishing-times tree and symbolic SCCs");
  addSource(tree);
  tree->add_flag("--dot", cfg.dot, "Graphviz output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    term.out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    term.out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    term.err << "usage error: " << e.what() << "\n" << "run 'wfts --help' for usage\n";
    return kUsage;
  }

  try {
    if (analyze->parsed())
      return cmdAnalyze(cfg, term);
    if (bench->parsed())
      return cmdBench(cfg, term);
    if (validate->parsed())
      return cmdValidate(cfg, term);
    return cmdTree(cfg, term);
  } catch (const UsageError& e) {
    term.err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ModelError& e) {
    term.err << "error: " << e.what() << "\n";
    return kModelError;
  } catch (const std::exception& e) {
    term.err << "error: " << e.what() << "\n";
    return kModelError;
  }
}

} // namespace wfts::cli
