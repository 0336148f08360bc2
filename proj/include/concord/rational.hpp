#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace concord {

/// Exact rational number. All quantities on decision paths use this type;
/// no floating point is ever consulted for a comparison or a result.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Renders in lowest terms: "3/4", "-1/2", "2", "0".
std::string to_string(const Rational& r);

/// Parses "p/q", integers ("3", "-1"), and plain decimals ("0.25", "-1.5"),
/// all exactly. Scientific notation and anything else is rejected.
std::optional<Rational> parse_rational(const std::string& text);

}  // namespace concord
