#include "kgraph/linsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "kgraph/graph_ops.hpp"

namespace kgraph {

bool LinearSystem::satisfied_by(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != column_count) return false;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Rational s = 0;
    for (const auto& [c, v] : rows[r]) s += v * x[c];
    if (s != rhs[r]) return false;
  }
  return true;
}

void LinearSystem::dump(std::ostream& out) const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r < row_keys.size()) out << encode(row_keys[r]);
    else out << "row " << r;
    for (const auto& [c, v] : rows[r]) out << ' ' << c << '=' << to_string(v);
    out << " rhs=" << to_string(rhs[r]) << '\n';
  }
}

LinearSystem assemble(const GraphSum& target, const std::vector<GraphSum>& columns) {
  std::optional<int> m;
  if (!target.empty()) m = target.uniform_sink_count();
  if (!target.empty() && !m) throw std::invalid_argument("assemble: target has mixed sink counts");
  std::map<KontsevichGraph, SparseVector> rows;
  for (int j = 0; j < static_cast<int>(columns.size()); ++j) {
    for (const auto& [g, c] : columns[j].terms()) {
      if (m && *m != g.sink_count()) throw std::invalid_argument("assemble: signature mismatch");
      m = g.sink_count();
      rows[g].emplace_back(j, c);
    }
  }
  for (const auto& [g, c] : target.terms()) rows.try_emplace(g);
  LinearSystem sys;
  sys.column_count = static_cast<int>(columns.size());
  for (auto& [g, row] : rows) {
    Rational b = 0;
    if (auto it = target.terms().find(g); it != target.terms().end()) b = it->second;
    sys.row_keys.push_back(g);
    sys.rows.push_back(std::move(row));  // columns were visited in order
    sys.rhs.push_back(b);
  }
  return sys;
}

std::vector<GraphSum> ansatz_columns(const std::vector<AnsatzPattern>& patterns) {
  std::vector<GraphSum> out;
  out.reserve(patterns.size());
  for (const auto& p : patterns) out.push_back(expand_skew(p.graph));
  return out;
}

AnsatzStatistics ansatz_statistics(const std::vector<AnsatzPattern>& patterns) {
  AnsatzStatistics st;
  st.patterns = static_cast<int>(patterns.size());
  std::set<LeibnizGraph> leibniz, classes, vanishing;
  std::set<KontsevichGraph> universe;
  for (const auto& p : patterns) {
    if (p.family >= static_cast<int>(st.class_sizes.size())) st.class_sizes.resize(p.family + 1, 0);
    ++st.class_sizes[p.family];
    leibniz.insert(leibniz_normal_form(p.graph).graph);
    auto cls = skew_class(p.graph);
    classes.insert(cls.graph);
    if (cls.sign == 0) vanishing.insert(cls.graph);
    st.labelled_terms += static_cast<long>(expand_labelled(p.graph).size());

    std::set<KontsevichGraph> touched;
    std::vector<int> perm(p.graph.sink_count());
    std::iota(perm.begin(), perm.end(), 0);
    do
      for (const auto& k : expand_labelled(p.graph.with_sinks_permuted(perm))) {
        auto nf = normal_form(k);
        if (nf.sign != 0) touched.insert(nf.graph);
      }
    while (std::next_permutation(perm.begin(), perm.end()));
    st.incidences += static_cast<long>(touched.size());

    auto col = expand_skew(p.graph);
    st.nonzeros += static_cast<long>(col.size());
    for (const auto& [g, c] : col.terms()) universe.insert(g);
  }
  st.distinct_leibniz = static_cast<int>(leibniz.size());
  st.skew_classes = static_cast<int>(classes.size());
  st.vanishing_classes = static_cast<int>(vanishing.size());
  st.admissible_graphs = static_cast<int>(universe.size());
  return st;
}

Echelon::Echelon(int columns) : columns_(columns), pivot_index_(columns, -1), column_load_(columns, 0) {}

void Echelon::reduce(SparseVector& row, Rational& rhs) const {
  std::map<int, Rational> acc(row.begin(), row.end());
  std::priority_queue<int, std::vector<int>, std::greater<>> todo;
  for (const auto& [c, v] : row)
    if (pivot_index_[c] >= 0) todo.push(pivot_index_[c]);
  while (!todo.empty()) {
    const int p = todo.top();
    todo.pop();
    const auto& piv = pivots_[p];
    auto it = acc.find(piv.col);
    if (it == acc.end()) continue;
    const Rational f = it->second;
    for (const auto& [c, v] : piv.row) {
      auto [jt, fresh] = acc.try_emplace(c, 0);
      jt->second -= f * v;
      if (jt->second == 0) {
        acc.erase(jt);
      } else if (fresh && pivot_index_[c] >= 0) {
        todo.push(pivot_index_[c]);
      }
    }
    rhs -= f * piv.rhs;
  }
  row.assign(acc.begin(), acc.end());
}

Echelon::Outcome Echelon::add_row(const SparseVector& in, const Rational& rhs_in) {
  SparseVector row = in;
  Rational rhs = rhs_in;
  reduce(row, rhs);
  if (row.empty()) return rhs == 0 ? Outcome::Redundant : Outcome::Inconsistent;
  // Sparsest column first, lowest index on ties.
  auto best = std::min_element(row.begin(), row.end(), [&](const auto& a, const auto& b) {
    return std::pair(column_load_[a.first], a.first) < std::pair(column_load_[b.first], b.first);
  });
  const int col = best->first;
  const Rational inv = 1 / best->second;
  for (auto& [c, v] : row) {
    v *= inv;
    ++column_load_[c];
  }
  rhs *= inv;
  pivot_index_[col] = static_cast<int>(pivots_.size());
  pivots_.push_back({col, std::move(row), std::move(rhs)});
  return Outcome::Pivot;
}

bool Echelon::implies(const SparseVector& in, const Rational& rhs_in) const {
  SparseVector row = in;
  Rational rhs = rhs_in;
  reduce(row, rhs);
  return row.empty() && rhs == 0;
}

std::vector<int> Echelon::free_columns() const {
  std::vector<int> out;
  for (int c = 0; c < columns_; ++c)
    if (pivot_index_[c] < 0) out.push_back(c);
  return out;
}

std::vector<Rational> Echelon::particular_solution() const {
  std::vector<Rational> x(columns_, 0);
  for (auto p = pivots_.rbegin(); p != pivots_.rend(); ++p) {
    Rational v = p->rhs;
    for (const auto& [c, a] : p->row)
      if (c != p->col) v -= a * x[c];
    x[p->col] = v;
  }
  return x;
}

std::vector<SparseVector> Echelon::nullspace_basis() const {
  const auto free = free_columns();
  std::vector<int> free_pos(columns_, -1);
  for (std::size_t k = 0; k < free.size(); ++k) free_pos[free[k]] = static_cast<int>(k);
  // Value of each column as a combination of the free parameters.
  std::vector<std::map<int, Rational>> value(columns_);
  for (std::size_t k = 0; k < free.size(); ++k) value[free[k]][static_cast<int>(k)] = 1;
  for (auto p = pivots_.rbegin(); p != pivots_.rend(); ++p) {
    auto& out = value[p->col];
    for (const auto& [c, a] : p->row) {
      if (c == p->col) continue;
      for (const auto& [k, v] : value[c]) {
        auto [it, fresh] = out.try_emplace(k, 0);
        it->second -= a * v;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  std::vector<SparseVector> basis(free.size());
  for (int c = 0; c < columns_; ++c)
    for (const auto& [k, v] : value[c]) basis[k].emplace_back(c, v);
  return basis;
}

SolutionSpace solve(const LinearSystem& sys, bool with_nullspace) {
  SolutionSpace s;
  Echelon e(sys.column_count);
  for (int r = 0; r < sys.row_count(); ++r) {
    if (e.add_row(sys.rows[r], sys.rhs[r]) == Echelon::Outcome::Inconsistent) {
      s.witness_row = r;
      s.rank = e.rank();
      return s;
    }
  }
  s.feasible = true;
  s.rank = e.rank();
  s.particular = e.particular_solution();
  if (with_nullspace) s.nullspace = e.nullspace_basis();
  return s;
}

std::optional<std::vector<Rational>> minimize_support(const LinearSystem& sys) {
  Echelon e(sys.column_count);
  for (int r = 0; r < sys.row_count(); ++r)
    if (e.add_row(sys.rows[r], sys.rhs[r]) == Echelon::Outcome::Inconsistent) return std::nullopt;
  for (int j = 0; j < sys.column_count; ++j) e.add_row({{j, Rational(1)}}, 0);
  return e.particular_solution();
}

int support_size(const std::vector<Rational>& x) {
  return static_cast<int>(std::count_if(x.begin(), x.end(), [](const Rational& v) { return v != 0; }));
}

LeibnizSum solution_to_leibniz(const std::vector<AnsatzPattern>& patterns, const std::vector<Rational>& x) {
  LeibnizSum out;
  for (std::size_t j = 0; j < patterns.size(); ++j) {
    if (x[j] == 0) continue;
    const auto& g = patterns[j].graph;
    std::vector<int> perm(g.sink_count());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      out.add(g.with_sinks_permuted(perm), permutation_sign(perm) * x[j]);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

bool verify_factorization(const std::vector<LeibnizTerm>& solution, const GraphSum& target) {
  return expand_terms(solution) == target;
}

std::vector<KontsevichGraph> vector_field_graphs(int internal) {
  const int nv = 1 + internal;
  std::vector<TargetPair> pairs;
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b) pairs.push_back({a, b});
  std::set<KontsevichGraph> seen;
  std::vector<int> idx(internal, 0);
  const int np = static_cast<int>(pairs.size());
  while (true) {
    std::vector<TargetPair> t(internal);
    for (int k = 0; k < internal; ++k) t[k] = pairs[idx[k]];
    KontsevichGraph g(1, std::move(t));
    if (g.in_degrees()[0] == 1) {
      auto nf = normal_form(g);
      if (nf.sign != 0) seen.insert(nf.graph);
    }
    int k = 0;
    while (k < internal && ++idx[k] == np) idx[k++] = 0;
    if (k == internal) break;
  }
  return {seen.begin(), seen.end()};
}

std::vector<LeibnizGraph> nabla_patterns() {
  // Sinks 0,1, wedges 2,3, Jacobiator 4.
  std::vector<TargetPair> pairs;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) pairs.push_back({a, b});
  std::vector<JacobiatorTriple> triples;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) triples.push_back({a, b, c});
  std::set<LeibnizGraph> seen;
  for (const auto& p : pairs)
    for (const auto& q : pairs)
      for (const auto& j : triples) {
        LeibnizGraph g(2, {p, q}, {j});
        const auto deg = g.in_degrees();
        if (deg[0] != 1 || deg[1] != 1) continue;
        auto key = skew_class(g);
        if (key.sign != 0) seen.insert(key.graph);
      }
  return {seen.begin(), seen.end()};
}

namespace {

bool feasible(const GraphSum& target, const std::vector<GraphSum>& columns) {
  return solve(assemble(target, columns), false).feasible;
}

void drop_empty(std::vector<GraphSum>& cols) {
  cols.erase(std::remove_if(cols.begin(), cols.end(), [](const GraphSum& s) { return s.empty(); }), cols.end());
}

}  // namespace

NontrivialityReport nontriviality_check() {
  GraphSum p;
  p.add(wedge_graph(), 1);
  std::vector<GraphSum> xcols;
  for (const auto& x : vector_field_graphs()) {
    GraphSum xs;
    xs.add(x, 1);
    xcols.push_back(schouten_bracket(p, 2, xs, 1));
  }
  drop_empty(xcols);
  std::vector<GraphSum> ncols;
  for (const auto& l : nabla_patterns()) ncols.push_back(expand_skew(l));
  drop_empty(ncols);

  NontrivialityReport rep;
  rep.vector_field_columns = static_cast<int>(xcols.size());
  rep.nabla_columns = static_cast<int>(ncols.size());
  auto all = xcols;
  all.insert(all.end(), ncols.begin(), ncols.end());
  const auto target = tetra_flow(1, 6);
  const auto sys = assemble(target, all);
  rep.rows = sys.row_count();
  rep.feasible = solve(sys, false).feasible;
  rep.vector_field_only_feasible = feasible(target, xcols);
  rep.zero_target_feasible = feasible(GraphSum{}, all);
  return rep;
}

QuadraticReport quadratic_part_check(bool tadpoles) {
  auto cols = ansatz_columns(generate_ansatz_linear(tadpoles));
  const int nlin = static_cast<int>(cols.size());
  auto qcols = ansatz_columns(generate_ansatz_quadratic(tadpoles));
  drop_empty(qcols);
  cols.insert(cols.end(), qcols.begin(), qcols.end());

  QuadraticReport rep;
  rep.linear_columns = nlin;
  rep.quadratic_columns = static_cast<int>(qcols.size());
  const auto target = lhs_trivector(Rational(1, 4), Rational(3, 2));
  const auto sys = assemble(target, cols);
  rep.rows = sys.row_count();

  Echelon e(sys.column_count);
  rep.feasible = true;
  for (int r = 0; r < sys.row_count(); ++r)
    if (e.add_row(sys.rows[r], sys.rhs[r]) == Echelon::Outcome::Inconsistent) rep.feasible = false;
  if (rep.feasible)
    for (int q = nlin; q < sys.column_count; ++q)
      if (e.implies({{q, Rational(1)}}, 0)) ++rep.quadratic_forced_zero;
  rep.all_quadratic_forced_zero = rep.feasible && rep.quadratic_forced_zero == rep.quadratic_columns;
  if (rep.feasible)
    for (int q = nlin; q < sys.column_count && !rep.witness_column; ++q) {
      if (e.implies({{q, Rational(1)}}, 0)) continue;
      Echelon w = e;
      w.add_row({{q, Rational(1)}}, 1);
      rep.witness_column = q;
      rep.witness = w.particular_solution();
      rep.witness_verified = sys.satisfied_by(rep.witness) && rep.witness[q] == 1;
    }

  std::vector<GraphSum> lin(cols.begin(), cols.begin() + nlin);
  rep.linear_only_feasible = feasible(target, lin);
  // Quadratic columns expressible through linear ones: treat columns as
  // vectors over the row keys and test membership in the linear row space.
  std::map<KontsevichGraph, int> key_index;
  for (int r = 0; r < sys.row_count(); ++r) key_index.emplace(sys.row_keys[r], r);
  auto as_vector = [&](const GraphSum& col) {
    SparseVector v;
    for (const auto& [g, c] : col.terms()) v.emplace_back(key_index.at(g), c);
    std::sort(v.begin(), v.end());
    return v;
  };
  Echelon span(sys.row_count());
  for (int j = 0; j < nlin; ++j) span.add_row(as_vector(cols[j]), 0);
  for (const auto& q : qcols)
    if (span.implies(as_vector(q), 0)) ++rep.quadratic_in_linear_span;
  return rep;
}

}  // namespace kgraph
