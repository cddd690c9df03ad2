#include "kgraph/poisson.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "eval_kernel.hpp"
#include "kgraph/linsys.hpp"
#include "kgraph/text.hpp"

namespace kgraph {

namespace {

int sort_sign(std::vector<int>& idx) {
  int s = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      s = -s;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return s;
}

std::string join_indices(const std::vector<int>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? " " : "") + std::to_string(idx[i] + 1);
  return s;
}

}  // namespace

PolyMultivector::PolyMultivector(int dimension, int arity) : d_(dimension), p_(arity) {
  if (d_ < 1 || d_ > kMaxVariables) throw std::invalid_argument("dimension must be in [1, 8]");
}

Polynomial PolyMultivector::get(const std::vector<int>& idx) const {
  auto k = idx;
  const int s = sort_sign(k);
  if (s == 0) return Polynomial(d_);
  auto it = comp_.find(k);
  if (it == comp_.end()) return Polynomial(d_);
  return s > 0 ? it->second : -it->second;
}

void PolyMultivector::set(const std::vector<int>& idx, const Polynomial& value) {
  if (static_cast<int>(idx.size()) != p_) throw std::invalid_argument("wrong index count");
  if (value.dimension() != d_) throw std::invalid_argument("dimension mismatch");
  for (int i : idx)
    if (i < 0 || i >= d_) throw std::invalid_argument("index out of range");
  auto k = idx;
  const int s = sort_sign(k);
  if (s == 0) {
    if (!value.is_zero()) throw std::invalid_argument("nonzero component at repeated indices");
    return;
  }
  if (value.is_zero()) comp_.erase(k);
  else comp_[k] = s > 0 ? value : -value;
}

PolyMultivector& PolyMultivector::operator+=(const PolyMultivector& o) {
  if (o.d_ != d_ || o.p_ != p_) throw std::invalid_argument("multivector shape mismatch");
  for (const auto& [k, v] : o.comp_) set(k, get(k) + v);
  return *this;
}

PolyMultivector operator*(const Rational& c, PolyMultivector a) {
  if (c == 0) {
    a.comp_.clear();
    return a;
  }
  for (auto& [k, v] : a.comp_) v *= c;
  return a;
}

void PolyMultivector::write(std::ostream& out) const {
  for (const auto& [k, v] : comp_) out << join_indices(k) << ' ' << v.to_string() << '\n';
}

void PolyOperator::add(const Key& key, const Polynomial& value) {
  if (value.is_zero()) return;
  auto [it, fresh] = comp_.try_emplace(key, value);
  if (!fresh) {
    it->second += value;
    if (it->second.is_zero()) comp_.erase(it);
  }
}

void PolyOperator::add(const PolyOperator& o, const Rational& c) {
  if (o.d_ != d_ || o.m_ != m_) throw std::invalid_argument("operator shape mismatch");
  if (c == 0) return;
  for (const auto& [k, v] : o.comp_) add(k, c * v);
}

bool PolyOperator::is_multivector() const {
  return std::all_of(comp_.begin(), comp_.end(), [](const auto& kv) {
    return std::all_of(kv.first.begin(), kv.first.end(), [](const auto& s) { return s.size() == 1; });
  });
}

PolyMultivector PolyOperator::to_multivector() const {
  if (!is_multivector()) throw std::logic_error("operator is not of differential order one in each sink");
  PolyMultivector mv(d_, m_);
  for (const auto& [k, v] : comp_) {
    std::vector<int> idx;
    for (const auto& s : k) idx.push_back(s[0]);
    auto sorted = idx;
    const int s = sort_sign(sorted);
    if (s == 0) throw std::logic_error("operator is not antisymmetric");
    if (std::is_sorted(idx.begin(), idx.end())) mv.set(idx, v);
  }
  // Every permuted component must agree with the stored one.
  for (const auto& [k, v] : comp_) {
    std::vector<int> idx;
    for (const auto& s : k) idx.push_back(s[0]);
    if (!(mv.get(idx) == v)) throw std::logic_error("operator is not antisymmetric");
  }
  std::size_t expected = 0;
  for (const auto& [k, v] : mv.components()) {
    std::vector<int> perm = k;
    std::size_t n = 0;
    do ++n;
    while (std::next_permutation(perm.begin(), perm.end()));
    expected += n;
  }
  if (expected != comp_.size()) throw std::logic_error("operator is not antisymmetric");
  return mv;
}

void PolyOperator::write(std::ostream& out) const {
  for (const auto& [k, v] : comp_) {
    for (std::size_t s = 0; s < k.size(); ++s) {
      if (s) out << " | ";
      out << (k[s].empty() ? std::string("-") : join_indices(k[s]));
    }
    out << " : " << v.to_string() << '\n';
  }
}

namespace {

template <class C>
PolyOperator run_kernel(const KontsevichGraph& g, const PolyMultivector& P, const Integer& scale) {
  const int d = P.dimension();
  std::vector<detail::IntPoly<C>> pmat(d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Polynomial pab = P.get({a, b});
      for (const auto& [m, c] : pab.terms()) {
        Rational v = c;
        v *= Rational(scale);
        pmat[a * d + b].emplace_back(m, detail::from_integer(v.get_num(), C{}));
      }
    }
  detail::GraphKernel<C> kernel(g, d, pmat);
  auto raw = kernel.run();
  Integer denom = 1;
  for (int k = 0; k < g.internal_count(); ++k) denom *= scale;
  PolyOperator op(d, g.sink_count());
  const auto& sink_in = kernel.sink_in_edges();
  for (auto& [key, poly] : raw) {
    PolyOperator::Key k(g.sink_count());
    int total = 0;
    for (const auto& e : sink_in) total += static_cast<int>(e.size());
    int shift = 4 * (total - 1);
    for (int s = 0; s < g.sink_count(); ++s)
      for (std::size_t i = 0; i < sink_in[s].size(); ++i, shift -= 4)
        k[s].push_back(static_cast<int>((key >> shift) & 0xf));
    Polynomial::Terms t;
    for (const auto& [m, c] : poly) t.emplace_back(m, Rational(detail::to_integer(c), denom));
    for (auto& [m, c] : t) c.canonicalize();
    op.add(k, Polynomial::from_terms(d, std::move(t)));
  }
  return op;
}

}  // namespace

PolyOperator eval_graph(const KontsevichGraph& g, const PolyMultivector& P) {
  if (P.arity() != 2) throw std::invalid_argument("eval_graph needs a bi-vector");
  // Clear denominators so the kernel runs over the integers.
  Integer scale = 1;
  for (const auto& [k, v] : P.components())
    for (const auto& [m, c] : v.terms()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den().get_mpz_t());
  try {
    return run_kernel<detail::CheckedInt>(g, P, scale);
  } catch (const detail::Overflow&) {
    return run_kernel<Integer>(g, P, scale);
  }
}

PolyOperator eval_graph_sum(const GraphSum& s, const PolyMultivector& P) {
  auto m = s.empty() ? std::optional<int>(0) : s.uniform_sink_count();
  if (!m) throw std::invalid_argument("eval_graph_sum: mixed sink counts");
  PolyOperator op(P.dimension(), *m);
  for (const auto& [g, c] : s.terms()) op.add(eval_graph(g, P), c);
  return op;
}

namespace {

// Full antisymmetric matrix with cached derivatives up to order three.
struct BivectorData {
  int d;
  std::vector<Polynomial> p;    // [a*d+b]
  std::vector<Polynomial> d1;   // [(a*d+b)*d+s]
  std::vector<Polynomial> d2;   // [((a*d+b)*d+s)*d+t]
  std::vector<Polynomial> d3;   // [(((a*d+b)*d+s)*d+t)*d+u]

  explicit BivectorData(const PolyMultivector& P, int order = 3) : d(P.dimension()) {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) p.push_back(P.get({a, b}));
    if (order >= 1)
      for (const auto& q : p)
        for (int s = 0; s < d; ++s) d1.push_back(q.derivative(s));
    if (order >= 2)
      for (const auto& q : d1)
        for (int t = 0; t < d; ++t) d2.push_back(q.derivative(t));
    if (order >= 3)
      for (const auto& q : d2)
        for (int u = 0; u < d; ++u) d3.push_back(q.derivative(u));
  }
  const Polynomial& P(int a, int b) const { return p[a * d + b]; }
  const Polynomial& D1(int a, int b, int s) const { return d1[(a * d + b) * d + s]; }
  const Polynomial& D2(int a, int b, int s, int t) const { return d2[((a * d + b) * d + s) * d + t]; }
  const Polynomial& D3(int a, int b, int s, int t, int u) const {
    return d3[(((a * d + b) * d + s) * d + t) * d + u];
  }
};

void add_product(Polynomial& acc, const Polynomial& a, const Polynomial& b) {
  if (!a.is_zero() && !b.is_zero()) acc += a * b;
}

// (B - B^T) / 2 stored as a bi-vector.
PolyMultivector antisymmetric_part(int d, const std::vector<Polynomial>& B) {
  PolyMultivector out(d, 2);
  const Rational half(1, 2);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) out.set({i, j}, half * (B[i * d + j] - B[j * d + i]));
  return out;
}

}  // namespace

PolyMultivector gamma1(const PolyMultivector& P) {
  if (P.arity() != 2) throw std::invalid_argument("gamma1 needs a bi-vector");
  const int d = P.dimension();
  BivectorData D(P, 3);
  // S[k,l,k',m'] = sum_l' d_l' P^{kk'} d_m' P^{ll'}
  std::vector<Polynomial> S(d * d * d * d, Polynomial(d));
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      for (int k2 = 0; k2 < d; ++k2)
        for (int m2 = 0; m2 < d; ++m2)
          for (int l2 = 0; l2 < d; ++l2)
            add_product(S[((k * d + l) * d + k2) * d + m2], D.D1(k, k2, l2), D.D1(l, l2, m2));
  // T[k,l,m] = sum_k',m' S[k,l,k',m'] d_k' P^{mm'}
  std::vector<Polynomial> T(d * d * d, Polynomial(d));
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      for (int m = 0; m < d; ++m)
        for (int k2 = 0; k2 < d; ++k2)
          for (int m2 = 0; m2 < d; ++m2)
            add_product(T[(k * d + l) * d + m], S[((k * d + l) * d + k2) * d + m2], D.D1(m, m2, k2));
  std::vector<Polynomial> B(d * d, Polynomial(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          for (int m = 0; m < d; ++m) add_product(B[i * d + j], D.D3(i, j, k, l, m), T[(k * d + l) * d + m]);
  return antisymmetric_part(d, B);
}

PolyMultivector gamma2(const PolyMultivector& P) {
  if (P.arity() != 2) throw std::invalid_argument("gamma2 needs a bi-vector");
  const int d = P.dimension();
  BivectorData D(P, 2);
  // W[k',l,l',j] = sum_m' d_m' P^{k'l} d_j P^{m'l'}
  std::vector<Polynomial> W(d * d * d * d, Polynomial(d));
  for (int k2 = 0; k2 < d; ++k2)
    for (int l = 0; l < d; ++l)
      for (int l2 = 0; l2 < d; ++l2)
        for (int j = 0; j < d; ++j)
          for (int m2 = 0; m2 < d; ++m2)
            add_product(W[((k2 * d + l) * d + l2) * d + j], D.D1(k2, l, m2), D.D1(m2, l2, j));
  // V[k,m,l,j] = sum_k',l' d_k'l' P^{km} W[k',l,l',j]
  std::vector<Polynomial> V(d * d * d * d, Polynomial(d));
  for (int k = 0; k < d; ++k)
    for (int m = 0; m < d; ++m)
      for (int l = 0; l < d; ++l)
        for (int j = 0; j < d; ++j)
          for (int k2 = 0; k2 < d; ++k2)
            for (int l2 = 0; l2 < d; ++l2)
              add_product(V[((k * d + m) * d + l) * d + j], D.D2(k, m, k2, l2), W[((k2 * d + l) * d + l2) * d + j]);
  // B[i,m] = sum_j,k,l d_kl P^{ij} V[k,m,l,j]
  std::vector<Polynomial> B(d * d, Polynomial(d));
  for (int i = 0; i < d; ++i)
    for (int m = 0; m < d; ++m)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) add_product(B[i * d + m], D.D2(i, j, k, l), V[((k * d + m) * d + l) * d + j]);
  return antisymmetric_part(d, B);
}

PolyMultivector schouten_components(const PolyMultivector& A, const PolyMultivector& B) {
  if (A.dimension() != B.dimension()) throw std::invalid_argument("schouten_components: dimension mismatch");
  if (A.arity() != 2 || B.arity() != 2) throw std::invalid_argument("schouten_components needs bi-vectors");
  const int d = A.dimension();
  BivectorData a(A, 1), b(B, 1);
  PolyMultivector out(d, 3);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        Polynomial c(d);
        for (int s = 0; s < d; ++s) {
          add_product(c, a.P(s, k), b.D1(i, j, s));
          add_product(c, b.P(s, k), a.D1(i, j, s));
          add_product(c, a.P(s, j), b.D1(k, i, s));
          add_product(c, b.P(s, j), a.D1(k, i, s));
          add_product(c, a.P(s, i), b.D1(j, k, s));
          add_product(c, b.P(s, i), a.D1(j, k, s));
        }
        out.set({i, j, k}, c);
      }
  return out;
}

PolyMultivector jacobian_bracket(const Polynomial& f, const Polynomial& g) {
  if (f.dimension() != 3 || g.dimension() != 3) throw std::invalid_argument("jacobian_bracket needs d = 3");
  PolyMultivector P(3, 2);
  P.set({0, 1}, f * g.derivative(2));
  P.set({0, 2}, -(f * g.derivative(1)));
  P.set({1, 2}, f * g.derivative(0));
  return P;
}

bool jacobi_check(const PolyMultivector& P) { return schouten_components(P, P).is_zero(); }

std::vector<RatioResult> ratio_scan(const PolyMultivector& P, const std::vector<std::pair<Rational, Rational>>& ratios) {
  const auto b1 = schouten_components(P, gamma1(P));
  const auto b2 = schouten_components(P, gamma2(P));
  std::vector<RatioResult> out;
  for (const auto& [a, b] : ratios) {
    auto s = a * b1;
    s += b * b2;
    out.push_back({a, b, s.is_zero()});
  }
  return out;
}

RatioSolution annihilating_ratio(const PolyMultivector& P) {
  const auto b1 = schouten_components(P, gamma1(P));
  const auto b2 = schouten_components(P, gamma2(P));
  // One equation a*c1 + b*c2 = 0 per component monomial.
  std::map<std::pair<std::vector<int>, Monomial>, std::pair<Rational, Rational>> eq;
  for (const auto& [k, v] : b1.components())
    for (const auto& [m, c] : v.terms()) eq[{k, m}].first = c;
  for (const auto& [k, v] : b2.components())
    for (const auto& [m, c] : v.terms()) eq[{k, m}].second = c;
  Echelon e(2);
  for (const auto& [key, c] : eq) {
    SparseVector row;
    if (c.first != 0) row.emplace_back(0, c.first);
    if (c.second != 0) row.emplace_back(1, c.second);
    e.add_row(row, 0);
  }
  RatioSolution r;
  r.dimension = 2 - e.rank();
  if (r.dimension == 1) {
    auto v = e.nullspace_basis().at(0);
    Rational a = 0, b = 0;
    for (const auto& [c, x] : v) (c == 0 ? a : b) = x;
    Integer l = 1, g = 0;
    for (const auto& x : {a, b}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    a *= l;
    b *= l;
    for (const auto& x : {a, b}) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
    a /= g;
    b /= g;
    if (a < 0 || (a == 0 && b < 0)) {
      a = -a;
      b = -b;
    }
    r.a = a;
    r.b = b;
  }
  return r;
}

bool factorization_identity_check(const PolyMultivector& P, const std::vector<LeibnizTerm>& solution,
                                  const GraphSum& target) {
  const auto lhs = eval_graph_sum(target, P);
  PolyOperator rhs(P.dimension(), lhs.sink_count());
  for (const auto& t : solution) {
    if (t.graph.sink_count() != lhs.sink_count()) throw std::invalid_argument("sink count mismatch");
    for (const auto& g : expand_labelled(t.graph)) rhs.add(eval_graph(g, P), t.coeff);
  }
  return lhs == rhs;
}

namespace {

void monomials_upto(int d, int max_degree, int var, Monomial cur, int left, std::vector<Monomial>& out) {
  if (var == d) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= left; ++e) monomials_upto(d, max_degree, var + 1, cur + e * variable_unit(var), left - e, out);
}

Polynomial random_poly(int d, int max_degree, std::mt19937_64& rng, int bound) {
  std::vector<Monomial> mons;
  monomials_upto(d, max_degree, 0, 0, max_degree, mons);
  std::uniform_int_distribution<int> coin(0, 1), coef(1, bound);
  Polynomial::Terms t;
  for (auto m : mons) {
    if (!coin(rng)) continue;
    const int c = coef(rng) * (coin(rng) ? 1 : -1);
    t.emplace_back(m, c);
  }
  return Polynomial::from_terms(d, std::move(t));
}

}  // namespace

Polynomial random_polynomial(int dimension, int max_degree, std::uint64_t seed, int coeff_bound) {
  std::mt19937_64 rng(seed);
  return random_poly(dimension, max_degree, rng, coeff_bound);
}

PolyMultivector random_bivector(int dimension, int max_degree, std::uint64_t seed, int coeff_bound) {
  std::mt19937_64 rng(seed);
  PolyMultivector P(dimension, 2);
  for (int i = 0; i < dimension; ++i)
    for (int j = i + 1; j < dimension; ++j) P.set({i, j}, random_poly(dimension, max_degree, rng, coeff_bound));
  return P;
}

PolyMultivector read_poisson(std::istream& in) {
  const auto lines = read_content_lines(in);
  if (lines.empty()) throw ParseError("empty Poisson file: expected the dimension on the first line");
  auto fail = [](const SourceLine& l, const std::string& msg) {
    return ParseError("line " + std::to_string(l.number) + ": " + msg);
  };
  int d = 0;
  try {
    d = parse_int(lines[0].text);
  } catch (const ParseError& e) {
    throw fail(lines[0], e.what());
  }
  if (d < 1 || d > kMaxVariables) throw fail(lines[0], "dimension must be in [1, 8]");
  PolyMultivector P(d, 2);
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto& l = lines[n];
    try {
      std::string_view s = l.text;
      auto tok = split_tokens(s);
      if (tok.size() < 3) throw ParseError("expected 'i j <polynomial>'");
      const int i = parse_int(tok[0]), j = parse_int(tok[1]);
      if (i < 1 || j < 1 || i > d || j > d || i >= j) throw ParseError("need 1 <= i < j <= d");
      const auto rest = s.substr(static_cast<std::size_t>(tok[2].data() - s.data()));
      if (!P.get({i - 1, j - 1}).is_zero()) throw ParseError("component given twice");
      P.set({i - 1, j - 1}, parse_polynomial(rest, d));
    } catch (const ParseError& e) {
      throw fail(l, e.what());
    }
  }
  return P;
}

PolyMultivector read_poisson_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_poisson(in);
}

}  // namespace kgraph
