#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace ssr {

/**
 * Exact rational arithmetic used throughout the solver.  Every quantity that
 * touches a linear constraint is a Rat; there is deliberately no floating
 * point anywhere in the pipeline, so feasibility answers are exact.
 */
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/** Renders a rational as "p/q", or just "p" when the denominator is one. */
inline std::string format_rat(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

/**
 * Parses "p" or "p/q" (optional leading '-' on p, no whitespace).
 * Throws std::invalid_argument on malformed input or a zero denominator.
 */
inline Rat parse_rat(const std::string& text) {
  const auto bad = [&text]() -> Rat {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  };
  const auto digits_only = [](const std::string& part, std::size_t from) {
    if (from >= part.size()) return false;
    for (std::size_t i = from; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  const std::size_t slash = text.find('/');
  std::string num = text.substr(0, slash);
  if (!digits_only(num, num.size() > 0 && num[0] == '-' ? 1 : 0)) return bad();
  if (slash == std::string::npos) return Rat(BigInt(num));
  std::string den = text.substr(slash + 1);
  if (!digits_only(den, 0)) return bad();
  BigInt d(den);
  if (d == 0) return bad();
  return Rat(BigInt(num), d);
}

}  // namespace ssr
