#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kgraph/graph_sum.hpp"
#include "kgraph/leibniz.hpp"

namespace kgraph {

// Sorted (index, value) pairs with nonzero values.
using SparseVector = std::vector<std::pair<int, Rational>>;

// Rows are graph normal forms, columns are ansatz patterns.
struct LinearSystem {
  std::vector<KontsevichGraph> row_keys;
  std::vector<SparseVector> rows;
  std::vector<Rational> rhs;
  int column_count = 0;

  int row_count() const { return static_cast<int>(rows.size()); }
  // A x == rhs exactly.
  bool satisfied_by(const std::vector<Rational>& x) const;
  // One line per row: "<encoding> col=coeff ... rhs=value".
  void dump(std::ostream& out) const;
};

// Columns are reduced graph sums; rows appear in key order. Throws
// std::invalid_argument if sink counts differ.
LinearSystem assemble(const GraphSum& target, const std::vector<GraphSum>& columns);

// Skew-symmetrized expansions of the patterns (see expand_skew).
std::vector<GraphSum> ansatz_columns(const std::vector<AnsatzPattern>& patterns);

// Size figures for an ansatz, for comparison with reference counts whose
// conventions are not fully pinned down.
struct AnsatzStatistics {
  int patterns = 0;
  std::vector<int> class_sizes;  // index = family (0 unused for linear ansatz)
  int distinct_leibniz = 0;      // distinct under leibniz_normal_form
  int skew_classes = 0;          // distinct modulo sink permutations
  int vanishing_classes = 0;     // skew classes that expand to zero
  long labelled_terms = 0;       // Kontsevich terms of all unsymmetrized expansions
  long incidences = 0;           // (pattern, graph) pairs before cancellation
  long nonzeros = 0;             // (pattern, graph) pairs after cancellation
  int admissible_graphs = 0;     // distinct normal forms reached by any column
};

AnsatzStatistics ansatz_statistics(const std::vector<AnsatzPattern>& patterns);

// Incremental exact row echelon form. Each stored row has coefficient 1 at
// its pivot and no entries in pivots created before it, so a new row is
// reduced by eliminating pivots in creation order.
class Echelon {
 public:
  enum class Outcome { Pivot, Redundant, Inconsistent };

  explicit Echelon(int columns);

  // Inconsistent rows are rejected and leave the state unchanged.
  Outcome add_row(const SparseVector& row, const Rational& rhs);
  // Whether the row equation already follows from the stored rows.
  bool implies(const SparseVector& row, const Rational& rhs) const;

  int rank() const { return static_cast<int>(pivots_.size()); }
  int column_count() const { return columns_; }
  std::vector<int> free_columns() const;
  // Free columns set to zero.
  std::vector<Rational> particular_solution() const;
  // One vector per free column.
  std::vector<SparseVector> nullspace_basis() const;

 private:
  struct PivotRow {
    int col;
    SparseVector row;
    Rational rhs;
  };

  void reduce(SparseVector& row, Rational& rhs) const;

  int columns_;
  std::vector<PivotRow> pivots_;
  std::vector<int> pivot_index_;  // column -> pivot position or -1
  std::vector<int> column_load_;  // entries per column among stored rows
};

struct SolutionSpace {
  bool feasible = false;
  std::vector<Rational> particular;
  std::vector<SparseVector> nullspace;
  int rank = 0;
  std::optional<int> witness_row;  // first row found inconsistent
};

SolutionSpace solve(const LinearSystem& sys, bool with_nullspace = true);

// Greedy: scanning columns in order, force x_j = 0 whenever still
// consistent; returns the remaining particular solution.
std::optional<std::vector<Rational>> minimize_support(const LinearSystem& sys);

int support_size(const std::vector<Rational>& x);

// Sum over patterns of x_j times the signed sink permutations of pattern j.
LeibnizSum solution_to_leibniz(const std::vector<AnsatzPattern>& patterns, const std::vector<Rational>& x);

bool verify_factorization(const std::vector<LeibnizTerm>& solution, const GraphSum& target);

struct NontrivialityReport {
  int vector_field_columns = 0;
  int nabla_columns = 0;
  int rows = 0;
  bool feasible = false;
  bool vector_field_only_feasible = false;
  bool zero_target_feasible = false;
};

// Can tetra_flow(1,6) be written as [[P,X]] + a Leibniz operator on
// (P, Jac(P)) with two wedges?
NontrivialityReport nontriviality_check();

struct QuadraticReport {
  int linear_columns = 0;
  int quadratic_columns = 0;
  int rows = 0;
  bool feasible = false;
  bool linear_only_feasible = false;
  int quadratic_forced_zero = 0;
  bool all_quadratic_forced_zero = false;
  int quadratic_in_linear_span = 0;
  // A solution with a nonzero quadratic coordinate, when one exists, checked
  // by substitution into the full system.
  std::optional<int> witness_column;
  std::vector<Rational> witness;
  bool witness_verified = false;
};

QuadraticReport quadratic_part_check(bool tadpoles = true);

// 1-vector graphs with one sink and three internal vertices, in normal form.
std::vector<KontsevichGraph> vector_field_graphs(int internal = 3);
// Bi-vector Leibniz graphs with two wedges and one Jacobiator, one per skew class.
std::vector<LeibnizGraph> nabla_patterns();

}  // namespace kgraph
