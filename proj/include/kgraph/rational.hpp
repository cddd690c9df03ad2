#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kgraph {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

}  // namespace kgraph
