/// @file  report.hpp
/// @brief Rendering limit-average reports as JSON, aligned text tables and CSV

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wfts/analysis.hpp"

namespace wfts {

struct RenderOptions {
  /// Include the `timing` object (the only non-deterministic part).
  bool timing = true;
  /// Emit ANSI colour codes in tables.
  bool color = false;
  /// Include the witness column / field.
  bool witnesses = true;
};

/// Rendered value of a product: `p/q` or `undefined`.
std::string formatValue(const std::optional<Rational>& value);

/// Two-decimal rendering or `undefined`.
std::string formatDecimal(const std::optional<Rational>& value);

/// JSON object with keys `mode`, `products`, `families`, `timing` in that
/// order. Extra reports (e.g. the product-based run in a comparison) only
/// contribute their timing.
std::string toJson(const LimitAverageReport& report, const RenderOptions& options = {},
                   const std::vector<const LimitAverageReport*>& extraTimings = {});

/// One row per product: product, value (2 decimals), exact value, cycle.
std::string toTable(const LimitAverageReport& report, const RenderOptions& options = {});

/// Header `product,value,decimal,witness` plus one row per product.
std::string toCsv(const LimitAverageReport& report, const RenderOptions& options = {});

/// Reads the per-product values of a JSON report produced by toJson().
/// Products are matched by feature names against `fm`; every valid product
/// must appear exactly once. Throws ModelError on malformed input.
LimitAverageReport reportFromJson(std::string_view text, const FeatureModel& fm);

} // namespace wfts
