#include <algorithm>
#include <fstream>
#include <set>

#include "doctest.h"
#include "kgraph/graph_ops.hpp"
#include "kgraph/leibniz.hpp"
#include "kgraph/text.hpp"
#include "test_util.hpp"

using namespace kgraph;

TEST_CASE("table 3 expands to table 4 and reduces to lhs at 1:6") {
  const auto sol = read_leibniz_file(data_path("table3.txt"));
  REQUIRE(sol.size() == 27);
  std::ifstream in(data_path("table4.txt"));
  const auto t4 = read_terms(in);
  std::vector<Term> expanded;
  for (const auto& t : sol)
    for (const auto& g : expand_labelled(t.graph)) expanded.push_back({g, t.coeff});
  CHECK(expanded.size() == 201);
  REQUIRE(t4.size() == 201);
  // Table 4 is the same multiset of terms in a different order. Graphs equal
  // to minus themselves carry no meaningful sign, so compare |c| for those.
  auto key = [](const Term& t) {
    auto nf = normal_form(t.graph);
    Rational c = nf.sign == 0 ? Rational(abs(t.coeff)) : Rational(nf.sign * t.coeff);
    return std::make_pair(nf.graph, c);
  };
  std::vector<std::pair<KontsevichGraph, Rational>> a, b;
  for (const auto& t : expanded) a.push_back(key(t));
  for (const auto& t : t4) b.push_back(key(t));
  for (std::size_t i = 0; i < 24; ++i) CHECK(a[i] == b[i]);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
  CHECK(expand_terms(sol) == lhs_trivector(1, 6));
}

TEST_CASE("native and table layouts round-trip") {
  auto [g, c] = parse_leibniz_line("3 3 4 6 5 6 3 6 | 0 1 2 -1");
  CHECK(g.sink_count() == 3);
  CHECK(g.wedge_count() == 3);
  CHECK(g.jacobiator_count() == 1);
  CHECK(c == -1);
  CHECK(g.jacobiator_in_degree(0) == 3);
  CHECK(format_leibniz_line(g, c) == "3 3 4 6 5 6 3 6 | 0 1 2 -1");
  auto table = to_table_layout(g);
  CHECK(format_graph_line(table, c) == "3 5 4 6 5 6 3 6 0 1 6 2 -1");
  CHECK(from_table_layout(table) == g);
  CHECK(parse_leibniz_any("3 5 4 6 5 6 3 6 0 1 6 2 -1").first == g);

  for (const auto& t : read_leibniz_file(data_path("table3.txt")))
    CHECK(from_table_layout(to_table_layout(t.graph)) == t.graph);

  auto [q, qc] = parse_leibniz_line("3 1 0 4 | 1 2 5 | 3 4 2 1/2");
  CHECK(q.jacobiator_count() == 2);
  CHECK(qc == Rational(1, 2));
  CHECK(format_leibniz_line(q, qc) == "3 1 0 4 | 1 2 5 | 3 4 2 1/2");
}

TEST_CASE("leibniz graph validation") {
  CHECK_THROWS(LeibnizGraph(3, {{0, 9}}, {{0, 1, 2}}));   // out of range
  CHECK_THROWS(LeibnizGraph(3, {{0, 1}}, {{0, 0, 2}}));   // repeated Jacobiator target
  CHECK_THROWS(LeibnizGraph(3, {{0, 1}}, {{0, 4, 2}}));   // Jacobiator on itself
  CHECK_THROWS_AS(parse_leibniz_line("3 1 0 4 | 1 2 1"), ParseError);
  CHECK_THROWS_AS(parse_leibniz_line("3 1 0 4 | 1 2 x 1"), ParseError);
}

TEST_CASE("leibniz normal form") {
  LeibnizGraph g(3, {{4, 1}}, {{0, 2, 3}});
  auto nf = leibniz_normal_form(g);
  CHECK(nf.sign != 0);
  // swapping a wedge's edges or two Jacobiator targets flips the sign
  LeibnizGraph swapped(3, {{1, 4}}, {{0, 2, 3}});
  LeibnizGraph rotated(3, {{4, 1}}, {{2, 0, 3}});
  CHECK(leibniz_normal_form(swapped).graph == nf.graph);
  CHECK(leibniz_normal_form(swapped).sign == -nf.sign);
  CHECK(leibniz_normal_form(rotated).sign == -nf.sign);
  auto again = leibniz_normal_form(nf.graph);
  CHECK(again.graph == nf.graph);
  CHECK(again.sign == 1);
  // the normal form expands to the same sum up to its sign
  CHECK(expand_leibniz(g) == Rational(nf.sign) * expand_leibniz(nf.graph));
}

TEST_CASE("tripod expands into 24 labelled terms") {
  const auto sol = read_leibniz_file(data_path("table3.txt"));
  CHECK(expand_labelled(sol[0].graph).size() == 24);
}

TEST_CASE("property: expansion has 3 * 2^r terms") {
  int cases = 0;
  for (const auto& p : generate_ansatz_linear()) {
    const int r = p.graph.jacobiator_in_degree(0);
    CHECK(expand_labelled(p.graph).size() == static_cast<std::size_t>(3 << r));
    ++cases;
  }
  for (const auto& p : generate_ansatz_quadratic()) {
    const int r0 = p.graph.jacobiator_in_degree(0), r1 = p.graph.jacobiator_in_degree(1);
    CHECK(expand_labelled(p.graph).size() == static_cast<std::size_t>((3 << r0) * (3 << r1)));
    ++cases;
  }
  CHECK(cases >= 100);
}

TEST_CASE("linear ansatz counts") {
  const auto pats = generate_ansatz_linear();
  CHECK(pats.size() == 1132);
  std::vector<int> sizes(7, 0);
  std::set<LeibnizGraph> labelled;
  for (const auto& p : pats) {
    ++sizes[p.family];
    labelled.insert(p.graph);
    // differential order (1,1,1) in the sinks
    auto deg = p.graph.in_degrees();
    CHECK(deg[0] == 1);
    CHECK(deg[1] == 1);
    CHECK(deg[2] == 1);
  }
  CHECK(labelled.size() == 1132);
  CHECK(sizes == std::vector<int>{0, 216, 432, 108, 288, 24, 64});
  CHECK(generate_ansatz_linear(false).size() < 1132);
}

TEST_CASE("quadratic ansatz is nonempty and canonical") {
  const auto q = generate_ansatz_quadratic();
  CHECK(!q.empty());
  std::set<LeibnizGraph> keys;
  for (const auto& p : q) {
    CHECK(p.graph.jacobiator_count() == 2);
    CHECK(p.graph.wedge_count() == 1);
    CHECK(skew_class(p.graph).sign != 0);
    keys.insert(skew_class(p.graph).graph);
  }
  CHECK(keys.size() == q.size());
}

TEST_CASE("table layout is emitted exactly as read") {
  std::ifstream in(data_path("table3.txt"));
  for (const auto& line : read_content_lines(in)) {
    auto [g, c] = parse_leibniz_any(line.text);
    CHECK(format_graph_line(to_table_layout(g), c) == line.text);
  }
}
