#include "kgraph/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace kgraph {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_literal(num) || (slash != std::string_view::npos && !is_integer_literal(den)))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  if (!num.empty() && num.front() == '+') num.remove_prefix(1);
  Rational q;
  q.get_num() = Integer(std::string(num));
  if (slash == std::string_view::npos) {
    q.get_den() = 1;
  } else {
    if (den.front() == '+') den.remove_prefix(1);
    q.get_den() = Integer(std::string(den));
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace kgraph
