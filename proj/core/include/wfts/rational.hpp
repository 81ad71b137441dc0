/// @file  rational.hpp
/// @brief Exact rational weights and their decimal rendering

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace wfts {

using Rational = boost::rational<std::int64_t>;

/// Parses `[-+]digits[.digits][/digits]` exactly. Throws std::invalid_argument.
Rational parseRational(std::string_view text);

/// Canonical `p/q` form, always with an explicit denominator.
std::string toFractionString(const Rational& r);

/// Shortest exact source form: `13.5`, `-2`, or `1/3` when no finite decimal exists.
std::string toSourceString(const Rational& r);

/// Rounds half away from zero to `places` decimals, e.g. 73/6 -> "12.17".
std::string toDecimalString(const Rational& r, int places = 2);

} // namespace wfts
