#include "doctest.h"
#include "kgraph/graph_ops.hpp"
#include "test_util.hpp"

using namespace kgraph;

namespace {

GraphSum single(const KontsevichGraph& g, const Rational& c = 1) {
  GraphSum s;
  s.add(g, c);
  return s;
}

int count_into(const KontsevichGraph& a, int i) {
  int r = 0;
  for (const auto& t : a.targets()) r += (t[0] == i) + (t[1] == i);
  return r;
}

// Antisymmetric random sum of arity k built from a few random multivector graphs.
GraphSum random_multivector_sum(std::mt19937_64& rng, int k) {
  GraphSum s;
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int t = 0; t < 2; ++t) {
    const int n = k == 1 ? 3 : 1 + static_cast<int>(rng() % 2);
    s.add(random_graph(rng, k, n, true), coeff(rng));
  }
  return skew_symmetrize(s, k);
}

}  // namespace

TEST_CASE("insert wedge into wedge") {
  auto w = wedge_graph();
  auto terms = insert_labelled(w, 0, w);
  CHECK(terms.size() == 3);
  for (const auto& g : terms) {
    CHECK(g.sink_count() == 3);
    CHECK(g.internal_count() == 2);
  }
  // sink order: b's sinks replace sink 0, then a's sink 1 becomes sink 2
  CHECK(terms[0].targets()[0][1] == 2);
}

TEST_CASE("insert into a sink with no incoming edges splices once") {
  KontsevichGraph a(3, {{0, 1}});
  auto terms = insert_labelled(a, 2, wedge_graph());
  REQUIRE(terms.size() == 1);
  CHECK(terms[0] == KontsevichGraph(4, {{0, 1}, {2, 3}}));
}

TEST_CASE("insert out of range") { CHECK_THROWS_AS(insert(wedge_graph(), 2, wedge_graph()), std::out_of_range); }

TEST_CASE("property: insert term counts are (m_b + n_b)^r") {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 120; ++k) {
    auto a = random_graph(rng, 2 + k % 2, 1 + k % 3);
    auto b = random_graph(rng, 1 + k % 2, 2 + (k / 2) % 2);
    const int i = static_cast<int>(rng() % a.sink_count());
    std::size_t expected = 1;
    for (int e = 0; e < count_into(a, i); ++e) expected *= b.vertex_count();
    CHECK(insert_labelled(a, i, b).size() == expected);
  }
}

TEST_CASE("bracket of the wedge with itself is twice the jacobiator") {
  auto w = single(wedge_graph());
  CHECK(schouten_bracket(w, w) == Rational(2) * jacobiator_sum());
  CHECK(schouten_bracket(GraphSum{}, 2, w, 2).empty());
}

TEST_CASE("bracket rejects non-multivector input") {
  auto bad = single(KontsevichGraph(2, {{0, 0 + 2}, {0, 1}}));
  CHECK_THROWS_AS(schouten_bracket(single(wedge_graph()), bad), std::invalid_argument);
}

TEST_CASE("tetrahedral flow constructors") {
  CHECK(tetra_flow(1, 0).size() == 1);
  CHECK(tetra_flow(0, 0).empty());
  CHECK(lhs_trivector(0, 0).empty());
  auto g2 = single(gamma2_prime_graph());
  const std::vector<int> swap{1, 0};
  CHECK(tetra_flow(0, 1) == Rational(1, 2) * (g2 - permute_sinks(g2, swap)));
}

TEST_CASE("lhs at 1/4:3/2 equals table 1") {
  auto lhs = lhs_trivector(Rational(1, 4), Rational(3, 2));
  auto t1 = load_sum("table1.txt");
  CHECK(lhs.size() == 39);
  CHECK(lhs == t1);
  CHECK(lhs_trivector(1, 6) == Rational(4) * t1);
  for (const auto& [g, c] : lhs.terms()) CHECK((abs(c) == Rational(1, 4) || abs(c) == Rational(3, 4)));
}

TEST_CASE("table 2 orbit collection") {
  const auto reps = load_terms("table2.txt");
  REQUIRE(reps.size() == 9);
  const auto lhs = lhs_trivector(1, 6);
  // the nine orbits exhaust the sum
  GraphSum rebuilt;
  for (const auto& r : reps) {
    CHECK(orbit_coefficient(lhs, r.graph) == r.coeff);
    rebuilt += Rational(factorial(3)) * skew_symmetrize(single(r.graph, r.coeff), 3);
  }
  CHECK(rebuilt == lhs);
  CHECK(collect_orbits(lhs).size() == 9);
}

TEST_CASE("skew-symmetrizing a graph symmetric in two sinks vanishes") {
  // two wedges, each on one of the two sinks and a common third vertex
  KontsevichGraph g(2, {{0, 4}, {1, 4}, {2, 3}});
  GraphSum s = single(g) + single(g.with_sinks_permuted(std::vector<int>{1, 0}));
  CHECK(skew_symmetrize(s, 2).empty());
}

TEST_CASE("property: skew_symmetrize is idempotent") {
  std::mt19937_64 rng(31337);
  for (int k = 0; k < 120; ++k) {
    const int m = 1 + k % 3;
    GraphSum s;
    for (int t = 0; t < 3; ++t) s.add(random_graph(rng, m, 2 + static_cast<int>(rng() % 2)), 1 + t);
    auto once = skew_symmetrize(s, m);
    CHECK(skew_symmetrize(once, m) == once);
  }
}

TEST_CASE("property: graded antisymmetry of the bracket") {
  std::mt19937_64 rng(4242);
  const std::pair<int, int> arities[] = {{2, 2}, {2, 1}, {1, 1}};
  int cases = 0;
  for (auto [k, l] : arities) {
    for (int t = 0, done = 0; done < 40 && t < 1000; ++t) {
      auto a = random_multivector_sum(rng, k);
      auto b = random_multivector_sum(rng, l);
      if (a.empty() || b.empty()) continue;
      const int sign = ((k - 1) * (l - 1)) % 2 == 0 ? 1 : -1;
      CHECK(schouten_bracket(a, k, b, l) == Rational(-sign) * schouten_bracket(b, l, a, k));
      ++cases;
      ++done;
    }
  }
  CHECK(cases >= 100);
}
