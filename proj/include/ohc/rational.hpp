#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace ohc {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q", "p" or a plain decimal like "0.05" into an exact rational.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

/// Largest integer <= r.
std::int64_t floor_of(const Rational& r);

/// Count threshold used for every "at least alpha * n^power"
/// requirement: max(1, floor(alpha * n^power)).
std::int64_t count_threshold(const Rational& alpha, std::int64_t n, int power);

}  // namespace ohc
