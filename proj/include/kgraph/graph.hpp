#pragma once

#include <array>
#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgraph/rational.hpp"

namespace kgraph {

// Ordered (L, R) pair of edge targets issued from one internal vertex.
using TargetPair = std::array<int, 2>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Oriented graph with `sink_count` ordered sinks labelled 0..m-1 and
// internal vertices labelled m..m+n-1, each issuing an ordered edge pair.
class KontsevichGraph {
 public:
  KontsevichGraph() = default;
  KontsevichGraph(int sink_count, std::vector<TargetPair> targets);

  int sink_count() const { return sink_count_; }
  int internal_count() const { return static_cast<int>(targets_.size()); }
  int vertex_count() const { return sink_count_ + internal_count(); }
  const std::vector<TargetPair>& targets() const { return targets_; }
  // Targets of internal vertex with label `v` (v >= sink_count).
  const TargetPair& targets_of(int v) const { return targets_[v - sink_count_]; }

  bool is_sink(int v) const { return v < sink_count_; }
  std::vector<int> in_degrees() const;
  bool has_double_edge() const;
  // Every sink receives exactly one edge.
  bool is_multivector() const;

  // Relabels sink v as perm[v]; internal vertices keep their labels.
  KontsevichGraph with_sinks_permuted(std::span<const int> perm) const;

  friend auto operator<=>(const KontsevichGraph&, const KontsevichGraph&) = default;
  friend bool operator==(const KontsevichGraph&, const KontsevichGraph&) = default;

 private:
  int sink_count_ = 0;
  std::vector<TargetPair> targets_;
};

struct NormalForm {
  KontsevichGraph graph;  // orbit-minimal labelling, each pair sorted
  int sign = 1;           // +1, -1, or 0 for graphs equal to minus themselves
};

// Minimum of the flattened target list over all internal relabellings and
// L/R swaps. Brute force over n! relabellings; the swaps are resolved by
// sorting each pair.
NormalForm normal_form(const KontsevichGraph& g);

// "m n t1 ... t2n" (no coefficient).
std::string encode(const KontsevichGraph& g);

// Parses "m n t1 ... t2n c".
std::pair<KontsevichGraph, Rational> parse_graph_line(std::string_view line);

std::string format_graph_line(const KontsevichGraph& g, const Rational& c);

// Sign of a permutation given as an image vector.
int permutation_sign(std::span<const int> perm);

}  // namespace kgraph
