#include "wfts/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "wfts/errors.hpp"

namespace wfts {

using ordered_json = nlohmann::ordered_json;

std::string formatValue(const std::optional<Rational>& value) {
  return value ? toFractionString(*value) : "undefined";
}

std::string formatDecimal(const std::optional<Rational>& value) {
  return value ? toDecimalString(*value) : "undefined";
}

namespace {

std::string joinCycle(const std::vector<std::string>& witness, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i)
      out += sep;
    out += witness[i];
  }
  return out;
}

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

std::string toJson(const LimitAverageReport& report, const RenderOptions& options,
                   const std::vector<const LimitAverageReport*>& extraTimings) {
  const auto& fm = report.featureModel;
  ordered_json doc;
  doc["mode"] = toString(report.mode);

  ordered_json products = ordered_json::array();
  for (const auto& r : report.products) {
    ordered_json entry;
    entry["features"] = fm.featureNames(r.product);
    entry["value"] = formatValue(r.value);
    entry["decimal"] = r.value ? ordered_json(toDecimalString(*r.value)) : ordered_json(nullptr);
    entry["witness"] = options.witnesses && !r.witness.empty() ? ordered_json(r.witness) : ordered_json(nullptr);
    products.push_back(std::move(entry));
  }
  doc["products"] = std::move(products);

  ordered_json families = ordered_json::array();
  for (const auto& f : report.families)
    families.push_back({{"expr", f.expr.toString()}, {"value", formatValue(f.value)}});
  doc["families"] = std::move(families);

  if (options.timing) {
    ordered_json timing = ordered_json::object();
    timing[std::string(toString(report.strategy)) + "_ms"] = report.elapsedMs;
    for (const auto* extra : extraTimings)
      timing[std::string(toString(extra->strategy)) + "_ms"] = extra->elapsedMs;
    doc["timing"] = std::move(timing);
  }
  return doc.dump(2) + "\n";
}

std::string toTable(const LimitAverageReport& report, const RenderOptions& options) {
  const auto& fm = report.featureModel;
  struct Row {
    std::string product, decimal, exact, cycle;
  };
  std::vector<Row> rows;
  rows.push_back({"product", toString(report.mode) + std::string("."), "exact", "cycle"});
  for (const auto& r : report.products)
    rows.push_back({fm.formatProduct(r.product), formatDecimal(r.value), formatValue(r.value),
                    r.witness.empty() ? "-" : joinCycle(r.witness, " -> ")});

  std::size_t w0 = 0, w1 = 0, w2 = 0;
  for (const auto& row : rows) {
    w0 = std::max(w0, row.product.size());
    w1 = std::max(w1, row.decimal.size());
    w2 = std::max(w2, row.exact.size());
  }

  const char* bold = options.color ? "\x1b[1m" : "";
  const char* dim = options.color ? "\x1b[2m" : "";
  const char* reset = options.color ? "\x1b[0m" : "";
  std::ostringstream out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const bool header = i == 0;
    const bool undefined = !header && !report.products[i - 1].value;
    out << (header ? bold : undefined ? dim : "") << std::left << std::setw(static_cast<int>(w0)) << row.product
        << "  " << std::right << std::setw(static_cast<int>(w1)) << row.decimal << "  " << std::left
        << std::setw(static_cast<int>(w2)) << row.exact;
    if (options.witnesses)
      out << "  " << row.cycle;
    out << (header || undefined ? reset : "") << "\n";
  }
  return out.str();
}

std::string toCsv(const LimitAverageReport& report, const RenderOptions& options) {
  const auto& fm = report.featureModel;
  std::ostringstream out;
  out << "product,value,decimal" << (options.witnesses ? ",witness" : "") << "\n";
  for (const auto& r : report.products) {
    out << csvField(fm.formatProduct(r.product)) << "," << formatValue(r.value) << "," << formatDecimal(r.value);
    if (options.witnesses)
      out << "," << csvField(joinCycle(r.witness, " "));
    out << "\n";
  }
  return out.str();
}

LimitAverageReport reportFromJson(std::string_view text, const FeatureModel& fm) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(std::string("report is not valid JSON: ") + e.what());
  }

  LimitAverageReport report;
  report.featureModel = fm;
  try {
    const std::string mode = doc.at("mode").get<std::string>();
    if (mode != "max" && mode != "min")
      throw ModelError("report mode must be max or min, got '" + mode + "'");
    report.mode = mode == "max" ? Mode::Max : Mode::Min;

    for (const Product& p : fm.products())
      report.products.push_back({p, std::nullopt, {}});
    std::vector<bool> seen(fm.productCount(), false);

    for (const auto& entry : doc.at("products")) {
      Product p;
      for (const auto& name : entry.at("features")) {
        const auto idx = fm.findFeature(name.get<std::string>());
        if (!idx)
          throw ModelError("report names unknown feature '" + name.get<std::string>() + "'");
        p.bits |= 1U << *idx;
      }
      const auto index = fm.productIndex(p);
      if (!index)
        throw ModelError("report lists invalid product " + fm.formatProduct(p));
      if (seen[*index])
        throw ModelError("report lists product " + fm.formatProduct(p) + " twice");
      seen[*index] = true;

      const std::string value = entry.at("value").get<std::string>();
      if (value != "undefined") {
        try {
          report.products[*index].value = parseRational(value);
        } catch (const std::invalid_argument&) {
          throw ModelError("bad value '" + value + "' for product " + fm.formatProduct(p));
        }
      }
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i])
        throw ModelError("report misses product " + fm.formatProduct(fm.products()[i]));
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed report: ") + e.what());
  }
  return report;
}

} // namespace wfts
