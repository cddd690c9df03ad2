#include "kgraph/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "kgraph/graph.hpp"

namespace kgraph {

int total_degree(Monomial m) {
  int s = 0;
  for (int v = 0; v < kMaxVariables; ++v) s += exponent(m, v);
  return s;
}

Polynomial::Polynomial(int dimension) : d_(dimension) {
  if (d_ < 0 || d_ > kMaxVariables) throw std::invalid_argument("polynomial dimension must be in [0, 8]");
}

Polynomial Polynomial::constant(int dimension, const Rational& c) {
  Polynomial p(dimension);
  if (c != 0) p.terms_.emplace_back(0, c);
  return p;
}

Polynomial Polynomial::variable(int dimension, int var) {
  if (var < 0 || var >= dimension) throw std::invalid_argument("variable index out of range");
  Polynomial p(dimension);
  p.terms_.emplace_back(variable_unit(var), 1);
  return p;
}

Polynomial Polynomial::from_terms(int dimension, Terms terms) {
  Polynomial p(dimension);
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [m, c] : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == m) {
      p.terms_.back().second += c;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (c != 0) {
      p.terms_.emplace_back(m, std::move(c));
    }
  }
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

namespace {

Polynomial::Terms merge(const Polynomial::Terms& a, const Polynomial::Terms& b, int sign) {
  Polynomial::Terms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, sign > 0 ? b[j].second : Rational(-b[j].second));
      ++j;
    } else {
      Rational c = a[i].second;
      if (sign > 0) c += b[j].second;
      else c -= b[j].second;
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

void check_same_dimension(const Polynomial& a, const Polynomial& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("polynomial dimension mismatch");
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same_dimension(*this, o);
  terms_ = merge(terms_, o.terms_, 1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same_dimension(*this, o);
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_same_dimension(a, b);
  Polynomial::Terms t;
  t.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (int v = 0; v < a.d_; ++v)
        if (exponent(ma, v) + exponent(mb, v) > kMaxExponent) throw std::overflow_error("exponent overflow");
      t.emplace_back(ma + mb, ca * cb);
    }
  return Polynomial::from_terms(a.d_, std::move(t));
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= d_) throw std::invalid_argument("variable index out of range");
  Polynomial p(d_);
  for (const auto& [m, c] : terms_) {
    const int e = exponent(m, var);
    if (e > 0) p.terms_.emplace_back(m - variable_unit(var), c * e);
  }
  return p;  // order preserved: subtracting a fixed unit keeps monomials sorted
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative exponent");
  Polynomial r = constant(d_, 1), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  auto t = terms_;
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    const int da = total_degree(a.first), db = total_degree(b.first);
    return da != db ? da > db : a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t) {
    const bool neg = c < 0;
    const Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (a != 1 || m == 0) {
      os << kgraph::to_string(a);
      wrote = true;
    }
    for (int v = 0; v < d_; ++v) {
      const int e = exponent(m, v);
      if (e == 0) continue;
      if (wrote) os << '*';
      os << 'x' << (v + 1);
      if (e > 1) os << '^' << e;
      wrote = true;
    }
  }
  return os.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view s, int d) : s_(s), d_(d) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial: " + msg + " at column " + std::to_string(pos_ + 1));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Integer number() {
    skip();
    const std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) fail("expected a number");
    return Integer(std::string(s_.substr(b, pos_ - b)));
  }
  Polynomial expr() {
    Polynomial p = term();
    while (true) {
      if (accept('+')) p += term();
      else if (accept('-')) p -= term();
      else return p;
    }
  }
  Polynomial term() {
    Polynomial p = unary();
    while (true) {
      if (accept('*')) {
        p = p * unary();
      } else if (accept('/')) {
        Integer q = number();
        if (q == 0) fail("division by zero");
        p *= Rational(Integer(1), q);
      } else {
        return p;
      }
    }
  }
  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    Polynomial b = atom();
    if (accept('^')) {
      Integer e = number();
      if (e > 64) fail("exponent too large");
      b = b.pow(static_cast<int>(e.get_si()));
    }
    return b;
  }
  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial::constant(d_, Rational(number()));
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      if (c == 'x' && pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        const Integer k = number();
        if (k < 1 || k > d_) fail("variable x" + k.get_str() + " outside x1..x" + std::to_string(d_));
        return Polynomial::variable(d_, static_cast<int>(k.get_si()) - 1);
      }
      const int v = c == 'x' ? 0 : c == 'y' ? 1 : 2;
      if (d_ > 3 || v >= d_) fail("variable '" + std::string(1, c) + "' needs dimension <= 3 and in range");
      return Polynomial::variable(d_, v);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  int d_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, int dimension) { return PolyParser(text, dimension).parse(); }

}  // namespace kgraph
