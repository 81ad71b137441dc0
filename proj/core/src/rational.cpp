#include "wfts/rational.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <stdexcept>

namespace wfts {

namespace {

std::int64_t parseDigits(std::string_view digits, std::string_view whole) {
  if (digits.empty())
    throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  std::int64_t value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
    if (__builtin_mul_overflow(value, 10, &value) ||
        __builtin_add_overflow(value, c - '0', &value))
      throw std::invalid_argument("number out of range '" + std::string(whole) + "'");
  }
  return value;
}

} // namespace

Rational parseRational(std::string_view text) {
  const std::string_view whole = text;
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  std::int64_t denominator = 1;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    denominator = parseDigits(text.substr(slash + 1), whole);
    if (denominator == 0)
      throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    text = text.substr(0, slash);
  }

  std::int64_t numerator = 0;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto intPart = text.substr(0, dot);
    const auto fracPart = text.substr(dot + 1);
    numerator = parseDigits(intPart, whole);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < fracPart.size(); ++i)
      if (__builtin_mul_overflow(scale, 10, &scale) ||
          __builtin_mul_overflow(numerator, 10, &numerator))
        throw std::invalid_argument("number out of range '" + std::string(whole) + "'");
    std::int64_t frac = parseDigits(fracPart, whole);
    if (__builtin_add_overflow(numerator, frac, &numerator) ||
        __builtin_mul_overflow(denominator, scale, &denominator))
      throw std::invalid_argument("number out of range '" + std::string(whole) + "'");
  } else {
    numerator = parseDigits(text, whole);
  }
  return Rational(negative ? -numerator : numerator, denominator);
}

std::string toFractionString(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string toSourceString(const Rational& r) {
  std::int64_t den = r.denominator();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1)
    return toFractionString(r);
  if (r.denominator() == 1)
    return std::to_string(r.numerator());
  return toDecimalString(r, std::max(twos, fives));
}

std::string toDecimalString(const Rational& r, int places) {
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i)
    scale *= 10;
  const bool negative = r.numerator() < 0;
  using Wide = boost::multiprecision::int128_t;
  const Wide num = negative ? -Wide(r.numerator()) : Wide(r.numerator());
  const Wide den = r.denominator();
  const Wide scaled = num * scale;
  Wide units = scaled / den;
  if ((scaled % den) * 2 >= den)
    ++units;

  const auto intPart = static_cast<std::int64_t>(Wide(units / scale));
  const auto fracPart = static_cast<std::int64_t>(Wide(units % scale));
  std::string out;
  if (negative && units != 0)
    out += '-';
  out += std::to_string(intPart);
  if (places > 0) {
    std::string frac = std::to_string(fracPart);
    out += '.';
    out += std::string(static_cast<std::size_t>(places) - frac.size(), '0');
    out += frac;
  }
  return out;
}

} // namespace wfts
