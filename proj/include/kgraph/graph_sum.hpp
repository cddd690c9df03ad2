#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kgraph/graph.hpp"

namespace kgraph {

// Labelled (not normalized) term as read from a file.
struct Term {
  KontsevichGraph graph;
  Rational coeff;
};

// Formal linear combination of normal-form graphs. Keys are always in
// normal form; stored coefficients are never zero.
class GraphSum {
 public:
  using Map = std::map<KontsevichGraph, Rational>;

  GraphSum() = default;

  // Normalizes g, folds the sign into c and merges.
  void add(const KontsevichGraph& g, const Rational& c);
  // Adds a graph already known to be in normal form (sign +1).
  void add_normalized(const KontsevichGraph& g, const Rational& c);
  void add(const GraphSum& other, const Rational& scale = 1);

  GraphSum& operator+=(const GraphSum& o);
  GraphSum& operator-=(const GraphSum& o);
  GraphSum& operator*=(const Rational& c);
  friend GraphSum operator+(GraphSum a, const GraphSum& b) { return a += b; }
  friend GraphSum operator-(GraphSum a, const GraphSum& b) { return a -= b; }
  friend GraphSum operator*(const Rational& c, GraphSum a) { return a *= c; }
  friend bool operator==(const GraphSum&, const GraphSum&) = default;

  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  // Coefficient of g (normalized first); zero if absent.
  Rational coefficient(const KontsevichGraph& g) const;

  // Common sink count of all terms; nullopt if empty or mixed.
  std::optional<int> uniform_sink_count() const;

  // One line per term in key order.
  std::string to_string() const;
  void write(std::ostream& out) const;

  static GraphSum from_terms(const std::vector<Term>& terms);

 private:
  Map terms_;
};

// Reads a graph-sum file; errors are ParseError prefixed with "line N: ".
std::vector<Term> read_terms(std::istream& in);
GraphSum read_graph_sum(std::istream& in);
GraphSum read_graph_sum_file(const std::string& path);

// The graphs of `layout` (kept exactly as labelled there) with their
// coefficients in s; nullopt if s has a term outside the layout.
std::optional<std::vector<Term>> in_layout(const GraphSum& s, const std::vector<Term>& layout);

}  // namespace kgraph
