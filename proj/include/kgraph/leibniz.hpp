#pragma once

#include <array>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kgraph/graph_sum.hpp"

namespace kgraph {

using JacobiatorTriple = std::array<int, 3>;

// Sinks 0..m-1, wedges m..m+w-1, Jacobiator placeholders m+w..m+w+J-1.
// Edges onto a Jacobiator are wedge (or Jacobiator) targets equal to its label.
class LeibnizGraph {
 public:
  LeibnizGraph() = default;
  LeibnizGraph(int sink_count, std::vector<TargetPair> wedges, std::vector<JacobiatorTriple> jacobiators);

  int sink_count() const { return sink_count_; }
  int wedge_count() const { return static_cast<int>(wedges_.size()); }
  int jacobiator_count() const { return static_cast<int>(jacs_.size()); }
  int vertex_count() const { return sink_count_ + wedge_count() + jacobiator_count(); }
  int jacobiator_label(int q) const { return sink_count_ + wedge_count() + q; }
  const std::vector<TargetPair>& wedges() const { return wedges_; }
  const std::vector<JacobiatorTriple>& jacobiators() const { return jacs_; }

  // Number of arrows landing on Jacobiator q.
  int jacobiator_in_degree(int q) const;
  // In-degree of every vertex label.
  std::vector<int> in_degrees() const;
  bool has_tadpole() const;

  LeibnizGraph with_sinks_permuted(const std::vector<int>& perm) const;

  friend auto operator<=>(const LeibnizGraph&, const LeibnizGraph&) = default;
  friend bool operator==(const LeibnizGraph&, const LeibnizGraph&) = default;

 private:
  int sink_count_ = 0;
  std::vector<TargetPair> wedges_;
  std::vector<JacobiatorTriple> jacs_;
};

struct LeibnizNormalForm {
  LeibnizGraph graph;
  int sign = 1;
};

// Canonical form under wedge relabelling, wedge L/R swaps, Jacobiator
// relabelling and permutations of each Jacobiator's targets (signed).
LeibnizNormalForm leibniz_normal_form(const LeibnizGraph& g);

// Every labelled Kontsevich graph of the expansion: Jacobiator q becomes the
// vertices m+w+2q (on t1,t2) and m+w+2q+1 (on m+w+2q, t3), summed over the
// three cyclic rotations of its targets; each arrow onto it is distributed
// over those two vertices. Size is the product of 3 * 2^r_q.
std::vector<KontsevichGraph> expand_labelled(const LeibnizGraph& g);
GraphSum expand_leibniz(const LeibnizGraph& g, const Rational& c = 1);

// Sum of sign(sigma) * sigma(g) over all sink permutations, expanded.
GraphSum expand_skew(const LeibnizGraph& g);

// Native format "m w t1 .. t2w | j1 j2 j3 [| j1 j2 j3] c".
std::pair<LeibnizGraph, Rational> parse_leibniz_line(std::string_view line);
std::string format_leibniz_line(const LeibnizGraph& g, const Rational& c);

// Table layout: a Kontsevich encoding with m+w+2 internal-side labels where
// vertex m+w carries (t1,t2), vertex m+w+1 carries (m+w,t3) and arrows onto
// the Jacobiator point at m+w. Single Jacobiator only.
LeibnizGraph from_table_layout(const KontsevichGraph& g);
KontsevichGraph to_table_layout(const LeibnizGraph& g);

// Accepts either format (a '|' selects the native one).
std::pair<LeibnizGraph, Rational> parse_leibniz_any(std::string_view line);

struct LeibnizTerm {
  LeibnizGraph graph;
  Rational coeff;
};

std::vector<LeibnizTerm> read_leibniz_terms(std::istream& in);
std::vector<LeibnizTerm> read_leibniz_file(const std::string& path);

// Reduced linear combination of Leibniz graphs in normal form.
class LeibnizSum {
 public:
  void add(const LeibnizGraph& g, const Rational& c);
  const std::map<LeibnizGraph, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  GraphSum expand() const;

 private:
  std::map<LeibnizGraph, Rational> terms_;
};

// Sum of c * expansion over the terms (no Leibniz-level reduction).
GraphSum expand_terms(const std::vector<LeibnizTerm>& terms);

struct AnsatzPattern {
  LeibnizGraph graph;
  int family = 0;  // class number 1..6 for linear patterns, 0 for quadratic
};

// The six classes of tri-vector Leibniz graphs with three wedges and one
// Jacobiator, one representative per choice of which sinks play which role.
std::vector<AnsatzPattern> generate_ansatz_linear(bool tadpoles = true);

// Tri-vector graphs with one wedge and two Jacobiators; deduplicated under
// leibniz_normal_form and sink permutations; patterns of sign 0 dropped.
std::vector<AnsatzPattern> generate_ansatz_quadratic(bool tadpoles = true);

// Canonical key of a pattern modulo sink permutations and its sign
// relative to that key (0 if the skew-symmetrized pattern vanishes formally).
LeibnizNormalForm skew_class(const LeibnizGraph& g);

}  // namespace kgraph
