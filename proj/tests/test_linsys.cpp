#include <random>

#include "doctest.h"
#include "kgraph/graph_ops.hpp"
#include "kgraph/linsys.hpp"
#include "test_util.hpp"

using namespace kgraph;

namespace {

Rational dot(const SparseVector& row, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const auto& [c, v] : row) s += v * x[c];
  return s;
}

SparseVector random_row(std::mt19937_64& rng, int cols) {
  std::uniform_int_distribution<int> val(-3, 3);
  SparseVector row;
  for (int c = 0; c < cols; ++c)
    if (rng() % 3 == 0) {
      const int v = val(rng);
      if (v != 0) row.emplace_back(c, v);
    }
  return row;
}

}  // namespace

TEST_CASE("echelon on a tiny system") {
  Echelon e(3);
  CHECK(e.add_row({{0, 1}, {1, 1}}, 2) == Echelon::Outcome::Pivot);
  CHECK(e.add_row({{1, 1}, {2, -1}}, 0) == Echelon::Outcome::Pivot);
  CHECK(e.add_row({{0, 1}, {2, 1}}, 2) == Echelon::Outcome::Redundant);
  CHECK(e.add_row({{0, 2}, {2, 2}}, 5) == Echelon::Outcome::Inconsistent);
  CHECK(e.rank() == 2);
  CHECK(e.implies({{0, 1}, {2, 1}}, 2));
  CHECK_FALSE(e.implies({{0, 1}}, 1));
  auto x = e.particular_solution();
  CHECK(x[0] + x[1] == 2);
  CHECK(x[1] == x[2]);
  auto ns = e.nullspace_basis();
  REQUIRE(ns.size() == 1);
}

TEST_CASE("property: echelon solves random consistent systems") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int t = 0; t < 150; ++t) {
    const int cols = 2 + t % 7, nrows = 1 + t % 9;
    std::vector<Rational> x0(cols);
    for (auto& v : x0) {
      v = Rational(val(rng), 1 + static_cast<int>(rng() % 3));
      v.canonicalize();
    }
    LinearSystem sys;
    sys.column_count = cols;
    for (int r = 0; r < nrows; ++r) {
      auto row = random_row(rng, cols);
      sys.rhs.push_back(dot(row, x0));
      sys.rows.push_back(std::move(row));
    }
    auto sol = solve(sys);
    REQUIRE(sol.feasible);
    CHECK(sys.satisfied_by(sol.particular));
    CHECK(sol.rank + static_cast<int>(sol.nullspace.size()) == cols);
    for (const auto& n : sol.nullspace) {
      std::vector<Rational> y(cols);
      for (const auto& [c, v] : n) y[c] = v;
      for (const auto& row : sys.rows) CHECK(dot(row, y) == 0);
    }
    auto small = minimize_support(sys);
    REQUIRE(small);
    CHECK(sys.satisfied_by(*small));

    // an extra contradicting row is rejected and leaves the state intact
    if (!sys.rows.empty() && !sys.rows[0].empty()) {
      Echelon e(cols);
      for (int r = 0; r < nrows; ++r) e.add_row(sys.rows[r], sys.rhs[r]);
      const int rank = e.rank();
      CHECK(e.add_row(sys.rows[0], sys.rhs[0] + 1) == Echelon::Outcome::Inconsistent);
      CHECK(e.rank() == rank);
      CHECK(e.implies(sys.rows[0], sys.rhs[0]));
    }
  }
}

TEST_CASE("infeasible system reports a witness row") {
  LinearSystem sys;
  sys.column_count = 1;
  sys.rows = {{{0, 1}}, {{0, 2}}};
  sys.rhs = {1, 3};
  auto sol = solve(sys);
  CHECK_FALSE(sol.feasible);
  CHECK(sol.witness_row == 1);
  CHECK_FALSE(minimize_support(sys));
}

TEST_CASE("assemble rejects mixed sink counts") {
  GraphSum target;
  target.add(wedge_graph(), 1);
  CHECK_THROWS_AS(assemble(target, {jacobiator_sum()}), std::invalid_argument);
}

TEST_CASE("solver reproduces a factorization of table 1") {
  const auto pats = generate_ansatz_linear();
  const auto cols = ansatz_columns(pats);
  const auto target = load_sum("table1.txt");
  const auto sys = assemble(target, cols);
  auto sol = solve(sys, false);
  REQUIRE(sol.feasible);
  auto x = minimize_support(sys);
  REQUIRE(x);
  CHECK(sys.satisfied_by(*x));
  auto leibniz = solution_to_leibniz(pats, *x);
  CHECK(leibniz.size() <= 27);
  CHECK(leibniz.expand() == target);

  std::vector<LeibnizTerm> terms;
  for (const auto& [g, c] : leibniz.terms()) terms.push_back({g, c});
  CHECK(verify_factorization(terms, target));

  CHECK_FALSE(solve(assemble(lhs_trivector(1, 1), cols), false).feasible);
}

TEST_CASE("verify rejects a perturbed table 3") {
  auto sol = read_leibniz_file(data_path("table3.txt"));
  const auto target = lhs_trivector(1, 6);
  CHECK(verify_factorization(sol, target));
  sol[5].coeff += 1;
  CHECK_FALSE(verify_factorization(sol, target));
}

TEST_CASE("ansatz statistics") {
  auto st = ansatz_statistics(generate_ansatz_linear());
  CHECK(st.patterns == 1132);
  CHECK(st.class_sizes == std::vector<int>{0, 216, 432, 108, 288, 24, 64});
  CHECK(st.distinct_leibniz <= st.patterns);
  CHECK(st.skew_classes <= st.distinct_leibniz);
  CHECK(st.nonzeros <= st.incidences);
  CHECK(st.admissible_graphs > 0);
}

TEST_CASE("tetrahedral flow is not a trivial factorization") {
  auto r = nontriviality_check();
  CHECK(r.vector_field_columns > 0);
  CHECK(r.nabla_columns > 0);
  CHECK_FALSE(r.feasible);
  CHECK_FALSE(r.vector_field_only_feasible);
  CHECK(r.zero_target_feasible);
}

TEST_CASE("quadratic patterns: sanity inversion") {
  const auto q = generate_ansatz_quadratic();
  REQUIRE(!q.empty());
  const auto col = expand_skew(q[0].graph);
  REQUIRE(!col.empty());
  auto sys = assemble(col, {col});
  auto sol = solve(sys);
  REQUIRE(sol.feasible);
  CHECK(sol.particular[0] == 1);
}

TEST_CASE("quadratic part check") {
  auto r = quadratic_part_check();
  CHECK(r.linear_only_feasible);
  CHECK(r.feasible);
  CHECK(r.quadratic_columns > 0);
  // Every quadratic column lies in the span of the linear ones, so a
  // solution with quadratic part exists; see the witness.
  CHECK(r.quadratic_in_linear_span == r.quadratic_columns);
  if (r.witness_column) CHECK(r.witness_verified);
}

TEST_CASE("minimize_support edge cases") {
  LinearSystem unique;
  unique.column_count = 2;
  unique.rows = {{{0, 1}}, {{0, 1}, {1, 1}}};
  unique.rhs = {2, 5};
  auto x = minimize_support(unique);
  REQUIRE(x);
  CHECK(*x == std::vector<Rational>{2, 3});

  LinearSystem zero;
  zero.column_count = 3;
  zero.rows = {{{0, 1}, {2, -1}}};
  zero.rhs = {0};
  x = minimize_support(zero);
  REQUIRE(x);
  CHECK(support_size(*x) == 0);
}

TEST_CASE("empty solution factorizes the empty sum") { CHECK(verify_factorization({}, GraphSum{})); }

TEST_CASE("gamma1 alone cannot be factorized") {
  const auto cols = ansatz_columns(generate_ansatz_linear());
  const auto target = lhs_trivector(1, 0);
  CHECK_FALSE(target.empty());
  CHECK_FALSE(solve(assemble(target, cols), false).feasible);
}
