#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "kgraph/graph_sum.hpp"
#include "kgraph/leibniz.hpp"
#include "kgraph/polynomial.hpp"

namespace kgraph {

// Totally antisymmetric p-vector on R^d; components stored for increasing
// index tuples (0-based).
class PolyMultivector {
 public:
  PolyMultivector(int dimension, int arity);

  int dimension() const { return d_; }
  int arity() const { return p_; }
  const std::map<std::vector<int>, Polynomial>& components() const { return comp_; }

  // Component at any index tuple: signed by the sorting permutation, zero
  // on repeated indices.
  Polynomial get(const std::vector<int>& idx) const;
  // Stores value at idx (any order; the sign is folded in).
  void set(const std::vector<int>& idx, const Polynomial& value);
  bool is_zero() const { return comp_.empty(); }

  PolyMultivector& operator+=(const PolyMultivector& o);
  friend PolyMultivector operator+(PolyMultivector a, const PolyMultivector& b) { return a += b; }
  friend PolyMultivector operator*(const Rational& c, PolyMultivector a);
  friend bool operator==(const PolyMultivector&, const PolyMultivector&) = default;

  // "i j ... <poly>" per nonzero component with 1-based indices.
  void write(std::ostream& out) const;

 private:
  int d_, p_;
  std::map<std::vector<int>, Polynomial> comp_;
};

// Polydifferential operator sum c^{I_1..I_m} d_{I_1} (x) ... (x) d_{I_m};
// keyed by the sorted multi-index of each sink.
class PolyOperator {
 public:
  using Key = std::vector<std::vector<int>>;

  PolyOperator(int dimension, int sink_count) : d_(dimension), m_(sink_count) {}

  int dimension() const { return d_; }
  int sink_count() const { return m_; }
  const std::map<Key, Polynomial>& components() const { return comp_; }
  bool is_zero() const { return comp_.empty(); }

  void add(const Key& key, const Polynomial& value);
  void add(const PolyOperator& o, const Rational& c = 1);
  friend bool operator==(const PolyOperator&, const PolyOperator&) = default;

  // Defined when every key has one index per sink.
  bool is_multivector() const;
  // Throws std::logic_error if not a multivector or not antisymmetric.
  PolyMultivector to_multivector() const;

  void write(std::ostream& out) const;

 private:
  int d_, m_;
  std::map<Key, Polynomial> comp_;
};

// The operator encoded by g with every internal vertex carrying P.
PolyOperator eval_graph(const KontsevichGraph& g, const PolyMultivector& P);
PolyOperator eval_graph_sum(const GraphSum& s, const PolyMultivector& P);

PolyMultivector gamma1(const PolyMultivector& P);
// Antisymmetric part (G' - G'^T)/2 of the second tetrahedral formula.
PolyMultivector gamma2(const PolyMultivector& P);
// Six-term component formula for the bracket of two bi-vectors.
PolyMultivector schouten_components(const PolyMultivector& A, const PolyMultivector& B);

// P^{12} = f d3 g, P^{13} = -f d2 g, P^{23} = f d1 g on R^3.
PolyMultivector jacobian_bracket(const Polynomial& f, const Polynomial& g);

bool jacobi_check(const PolyMultivector& P);

struct RatioResult {
  Rational a, b;
  bool annihilates = false;
};

std::vector<RatioResult> ratio_scan(const PolyMultivector& P, const std::vector<std::pair<Rational, Rational>>& ratios);

// Ratios a:b with [[P, a G1 + b G2]] = 0, as a subspace of the (a,b) plane.
struct RatioSolution {
  int dimension = 0;  // 0: none, 1: unique ratio, 2: every ratio
  Rational a, b;      // generator when dimension == 1, normalized with gcd-free integers
};
RatioSolution annihilating_ratio(const PolyMultivector& P);

// Evaluates the target sum and, independently, every labelled Kontsevich
// term of the expanded solution; returns exact operator equality.
bool factorization_identity_check(const PolyMultivector& P, const std::vector<LeibnizTerm>& solution,
                                  const GraphSum& target);

PolyMultivector random_bivector(int dimension, int max_degree, std::uint64_t seed, int coeff_bound = 2);
Polynomial random_polynomial(int dimension, int max_degree, std::uint64_t seed, int coeff_bound = 2);

// First line "d", then "i j <polynomial>" lines (1-based, i < j).
PolyMultivector read_poisson(std::istream& in);
PolyMultivector read_poisson_file(const std::string& path);

}  // namespace kgraph
