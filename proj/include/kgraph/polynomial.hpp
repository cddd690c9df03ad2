#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgraph/rational.hpp"

namespace kgraph {

// Exponent vector packed one byte per variable, x1 in the top byte, so that
// integer order is lexicographic order with x1 most significant.
using Monomial = std::uint64_t;

constexpr int kMaxVariables = 8;
constexpr int kMaxExponent = 255;

inline int exponent(Monomial m, int var) { return static_cast<int>((m >> (8 * (7 - var))) & 0xff); }
inline Monomial variable_unit(int var) { return Monomial{1} << (8 * (7 - var)); }
int total_degree(Monomial m);

// Sparse multivariate polynomial over the rationals in d variables.
class Polynomial {
 public:
  using Terms = std::vector<std::pair<Monomial, Rational>>;  // sorted by monomial, no zeros

  explicit Polynomial(int dimension = 0);
  static Polynomial constant(int dimension, const Rational& c);
  static Polynomial variable(int dimension, int var);
  static Polynomial from_terms(int dimension, Terms terms);  // any order, merges duplicates

  int dimension() const { return d_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  // Partial derivative in variable `var` (0-based).
  Polynomial derivative(int var) const;
  Polynomial pow(int e) const;

  // Graded lexicographic, highest first: "36*x1^6*x2*x3 + 48*x1^5*x2".
  std::string to_string() const;

 private:
  int d_;
  Terms terms_;
};

// Grammar: rational literals, x1..xd (x, y, z also accepted when d <= 3),
// + - * / ^ and parentheses; '/' only divides by an integer literal.
Polynomial parse_polynomial(std::string_view text, int dimension);

}  // namespace kgraph
