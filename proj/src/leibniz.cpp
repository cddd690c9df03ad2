#include "kgraph/leibniz.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "kgraph/text.hpp"

namespace kgraph {

LeibnizGraph::LeibnizGraph(int sink_count, std::vector<TargetPair> wedges, std::vector<JacobiatorTriple> jacobiators)
    : sink_count_(sink_count), wedges_(std::move(wedges)), jacs_(std::move(jacobiators)) {
  if (sink_count_ < 0) throw std::invalid_argument("negative sink count");
  const int nv = vertex_count();
  auto check = [&](int v) {
    if (v < 0 || v >= nv)
      throw std::invalid_argument("target " + std::to_string(v) + " out of range [0, " + std::to_string(nv) + ")");
  };
  for (const auto& t : wedges_)
    for (int v : t) check(v);
  for (int q = 0; q < jacobiator_count(); ++q) {
    const auto& j = jacs_[q];
    for (int v : j) {
      check(v);
      if (v == jacobiator_label(q)) throw std::invalid_argument("Jacobiator targets itself");
    }
    if (j[0] == j[1] || j[0] == j[2] || j[1] == j[2])
      throw std::invalid_argument("Jacobiator targets must be pairwise distinct");
  }
}

std::vector<int> LeibnizGraph::in_degrees() const {
  std::vector<int> deg(vertex_count(), 0);
  for (const auto& t : wedges_)
    for (int v : t) ++deg[v];
  for (const auto& j : jacs_)
    for (int v : j) ++deg[v];
  return deg;
}

int LeibnizGraph::jacobiator_in_degree(int q) const { return in_degrees()[jacobiator_label(q)]; }

bool LeibnizGraph::has_tadpole() const {
  for (int k = 0; k < wedge_count(); ++k)
    for (int v : wedges_[k])
      if (v == sink_count_ + k) return true;
  return false;
}

LeibnizGraph LeibnizGraph::with_sinks_permuted(const std::vector<int>& perm) const {
  auto map = [&](int v) { return v < sink_count_ ? perm[v] : v; };
  auto w = wedges_;
  for (auto& t : w)
    for (int& v : t) v = map(v);
  auto j = jacs_;
  for (auto& t : j)
    for (int& v : t) v = map(v);
  return LeibnizGraph(sink_count_, std::move(w), std::move(j));
}

namespace {

int sort3(JacobiatorTriple& t) {
  int s = 1;
  auto cswap = [&](int a, int b) {
    if (t[a] > t[b]) {
      std::swap(t[a], t[b]);
      s = -s;
    }
  };
  cswap(0, 1);
  cswap(1, 2);
  cswap(0, 1);
  return s;
}

}  // namespace

LeibnizNormalForm leibniz_normal_form(const LeibnizGraph& g) {
  const int m = g.sink_count(), w = g.wedge_count(), nj = g.jacobiator_count();
  for (const auto& t : g.wedges())
    if (t[0] == t[1]) return {g, 0};
  std::vector<int> wp(w), jp(nj);
  std::iota(wp.begin(), wp.end(), 0);
  bool have = false;
  std::vector<TargetPair> best_w, cur_w(w);
  std::vector<JacobiatorTriple> best_j, cur_j(nj);
  int best_sign = 0;
  do {
    std::iota(jp.begin(), jp.end(), 0);
    do {
      auto map = [&](int v) {
        if (v < m) return v;
        if (v < m + w) return m + wp[v - m];
        return m + w + jp[v - m - w];
      };
      int sign = 1;
      for (int k = 0; k < w; ++k) {
        TargetPair t{map(g.wedges()[k][0]), map(g.wedges()[k][1])};
        if (t[0] > t[1]) {
          std::swap(t[0], t[1]);
          sign = -sign;
        }
        cur_w[wp[k]] = t;
      }
      for (int q = 0; q < nj; ++q) {
        const auto& s = g.jacobiators()[q];
        JacobiatorTriple t{map(s[0]), map(s[1]), map(s[2])};
        sign *= sort3(t);
        cur_j[jp[q]] = t;
      }
      const auto c = std::tie(cur_w, cur_j);
      if (!have || c < std::tie(best_w, best_j)) {
        best_w = cur_w;
        best_j = cur_j;
        best_sign = sign;
        have = true;
      } else if (c == std::tie(best_w, best_j) && sign != best_sign) {
        best_sign = 0;
      }
    } while (std::next_permutation(jp.begin(), jp.end()));
  } while (std::next_permutation(wp.begin(), wp.end()));
  return {LeibnizGraph(m, std::move(best_w), std::move(best_j)), best_sign};
}

LeibnizNormalForm skew_class(const LeibnizGraph& g) {
  std::vector<int> perm(g.sink_count());
  std::iota(perm.begin(), perm.end(), 0);
  bool have = false;
  LeibnizNormalForm best;
  do {
    auto nf = leibniz_normal_form(g.with_sinks_permuted(perm));
    nf.sign *= permutation_sign(perm);
    if (!have || nf.graph < best.graph) {
      best = nf;
      have = true;
    } else if (nf.graph == best.graph && nf.sign != best.sign) {
      best.sign = 0;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<KontsevichGraph> expand_labelled(const LeibnizGraph& g) {
  const int m = g.sink_count(), w = g.wedge_count(), nj = g.jacobiator_count();
  const int jbase = m + w;
  // Arrows onto Jacobiator q are held as -1-q until distributed.
  auto enc = [&](int v) { return v >= jbase ? -1 - (v - jbase) : v; };
  std::vector<KontsevichGraph> out;
  std::vector<int> rot(nj, 0);
  while (true) {
    std::vector<TargetPair> t;
    t.reserve(w + 2 * nj);
    for (const auto& p : g.wedges()) t.push_back({enc(p[0]), enc(p[1])});
    for (int q = 0; q < nj; ++q) {
      const auto& j = g.jacobiators()[q];
      const int r = rot[q];
      const int a = jbase + 2 * q;
      t.push_back({enc(j[r]), enc(j[(r + 1) % 3])});
      t.push_back({a, enc(j[(r + 2) % 3])});
    }
    std::vector<std::pair<int, int>> slots;
    for (int k = 0; k < static_cast<int>(t.size()); ++k)
      for (int s = 0; s < 2; ++s)
        if (t[k][s] < 0) slots.emplace_back(k, s);
    const int r = static_cast<int>(slots.size());
    for (unsigned long mask = 0; mask < (1UL << r); ++mask) {
      auto u = t;
      for (int b = 0; b < r; ++b) {
        auto [k, s] = slots[b];
        const int q = -1 - t[k][s];
        u[k][s] = jbase + 2 * q + static_cast<int>((mask >> (r - 1 - b)) & 1UL);
      }
      out.emplace_back(m, std::move(u));
    }
    int q = 0;
    while (q < nj && ++rot[q] == 3) rot[q++] = 0;
    if (q == nj) break;
  }
  return out;
}

GraphSum expand_leibniz(const LeibnizGraph& g, const Rational& c) {
  GraphSum s;
  for (const auto& k : expand_labelled(g)) s.add(k, c);
  return s;
}

GraphSum expand_skew(const LeibnizGraph& g) {
  GraphSum s;
  std::vector<int> perm(g.sink_count());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const Rational c = permutation_sign(perm);
    for (const auto& k : expand_labelled(g.with_sinks_permuted(perm))) s.add(k, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return s;
}

std::pair<LeibnizGraph, Rational> parse_leibniz_line(std::string_view line) {
  const auto tok = split_tokens(line);
  std::vector<std::size_t> bars;
  for (std::size_t i = 0; i < tok.size(); ++i)
    if (tok[i] == "|") bars.push_back(i);
  if (bars.empty()) throw ParseError("missing '|' before Jacobiator targets");
  if (bars[0] < 2) throw ParseError("wrong token count: expected 'm w targets... | j1 j2 j3 coeff'");
  const int m = parse_int(tok[0]);
  const int w = parse_int(tok[1]);
  if (m < 0 || w < 0) throw ParseError("negative vertex count");
  if (bars[0] != static_cast<std::size_t>(2 + 2 * w))
    throw ParseError("wrong token count: expected " + std::to_string(2 * w) + " wedge targets");
  const std::size_t nj = bars.size();
  if (tok.size() != bars[0] + 4 * nj + 1) throw ParseError("wrong token count after '|'");
  std::vector<TargetPair> wedges(w);
  for (int k = 0; k < w; ++k) wedges[k] = {parse_int(tok[2 + 2 * k]), parse_int(tok[3 + 2 * k])};
  std::vector<JacobiatorTriple> jacs;
  for (std::size_t q = 0; q < nj; ++q) {
    const std::size_t b = bars[0] + 4 * q;
    if (tok[b] != "|") throw ParseError("expected '|' before each Jacobiator triple");
    jacs.push_back({parse_int(tok[b + 1]), parse_int(tok[b + 2]), parse_int(tok[b + 3])});
  }
  Rational c;
  try {
    c = parse_rational(tok.back());
    return {LeibnizGraph(m, std::move(wedges), std::move(jacs)), c};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string format_leibniz_line(const LeibnizGraph& g, const Rational& c) {
  std::ostringstream os;
  os << g.sink_count() << ' ' << g.wedge_count();
  for (const auto& t : g.wedges()) os << ' ' << t[0] << ' ' << t[1];
  for (const auto& j : g.jacobiators()) os << " | " << j[0] << ' ' << j[1] << ' ' << j[2];
  os << ' ' << to_string(c);
  return os.str();
}

LeibnizGraph from_table_layout(const KontsevichGraph& g) {
  const int m = g.sink_count();
  const int w = g.internal_count() - 2;
  if (w < 0) throw std::invalid_argument("table layout needs at least two internal vertices");
  const int a = m + w;
  const auto& ta = g.targets_of(a);
  const auto& tb = g.targets_of(a + 1);
  if (tb[0] != a) throw std::invalid_argument("table layout: last vertex must point first to the placeholder");
  std::vector<TargetPair> wedges(g.targets().begin(), g.targets().begin() + w);
  for (const auto& t : wedges)
    for (int v : t)
      if (v == a + 1) throw std::invalid_argument("table layout: arrow onto the second Jacobiator vertex");
  for (int v : {ta[0], ta[1], tb[1]})
    if (v == a || v == a + 1) throw std::invalid_argument("table layout: Jacobiator targets itself");
  return LeibnizGraph(m, std::move(wedges), {{ta[0], ta[1], tb[1]}});
}

KontsevichGraph to_table_layout(const LeibnizGraph& g) {
  if (g.jacobiator_count() != 1) throw std::invalid_argument("table layout supports one Jacobiator");
  const int a = g.jacobiator_label(0);
  auto t = g.wedges();
  const auto& j = g.jacobiators()[0];
  t.push_back({j[0], j[1]});
  t.push_back({a, j[2]});
  return KontsevichGraph(g.sink_count(), std::move(t));
}

std::pair<LeibnizGraph, Rational> parse_leibniz_any(std::string_view line) {
  if (line.find('|') != std::string_view::npos) return parse_leibniz_line(line);
  auto [g, c] = parse_graph_line(line);
  try {
    return {from_table_layout(g), c};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::vector<LeibnizTerm> read_leibniz_terms(std::istream& in) {
  std::vector<LeibnizTerm> out;
  for (const auto& line : read_content_lines(in)) {
    try {
      auto [g, c] = parse_leibniz_any(line.text);
      out.push_back({std::move(g), std::move(c)});
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line.number) + ": " + e.what());
    }
  }
  return out;
}

std::vector<LeibnizTerm> read_leibniz_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_leibniz_terms(in);
}

void LeibnizSum::add(const LeibnizGraph& g, const Rational& c) {
  if (c == 0) return;
  auto nf = leibniz_normal_form(g);
  if (nf.sign == 0) return;
  auto [it, inserted] = terms_.try_emplace(nf.graph, nf.sign * c);
  if (!inserted) {
    it->second += nf.sign * c;
    if (it->second == 0) terms_.erase(it);
  }
}

GraphSum LeibnizSum::expand() const {
  GraphSum s;
  for (const auto& [g, c] : terms_)
    for (const auto& k : expand_labelled(g)) s.add(k, c);
  return s;
}

GraphSum expand_terms(const std::vector<LeibnizTerm>& terms) {
  GraphSum s;
  for (const auto& t : terms)
    for (const auto& k : expand_labelled(t.graph)) s.add(k, t.coeff);
  return s;
}

namespace {

constexpr int kJ = 6;  // Jacobiator label in the linear ansatz

std::vector<TargetPair> free_pairs(int self, bool tadpoles) {
  std::vector<int> c;
  for (int v : {3, 4, 5, kJ})
    if (tadpoles || v != self) c.push_back(v);
  std::vector<TargetPair> out;
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = a + 1; b < c.size(); ++b) out.push_back({c[a], c[b]});
  return out;
}

std::vector<int> free_targets(int self, bool tadpoles) {
  std::vector<int> out;
  for (int v : {3, 4, 5, kJ})
    if (tadpoles || v != self) out.push_back(v);
  return out;
}

}  // namespace

std::vector<AnsatzPattern> generate_ansatz_linear(bool tadpoles) {
  std::vector<AnsatzPattern> out;
  auto emit = [&](int cls, TargetPair w3, TargetPair w4, TargetPair w5, JacobiatorTriple j) {
    out.push_back({LeibnizGraph(3, {w3, w4, w5}, {j}), cls});
  };
  const auto f3 = free_pairs(3, tadpoles), f4 = free_pairs(4, tadpoles), f5 = free_pairs(5, tadpoles);
  const auto s3 = free_targets(3, tadpoles), s4 = free_targets(4, tadpoles), s5 = free_targets(5, tadpoles);
  const std::array<TargetPair, 3> wedge_pairs{{{3, 4}, {3, 5}, {4, 5}}};

  // 1: Jacobiator on all three sinks.
  for (auto a : f3)
    for (auto b : f4)
      for (auto c : f5) emit(1, a, b, c, {0, 1, 2});
  // 2: Jacobiator on sinks 0,1 and one wedge; wedge 3 on sink 2.
  for (int x : {3, 4, 5})
    for (int y : s3)
      for (auto b : f4)
        for (auto c : f5) emit(2, {2, y}, b, c, {0, 1, x});
  // 3: Jacobiator on sink 0 and two wedges; wedge 3 on sinks 1,2.
  for (auto p : wedge_pairs)
    for (auto b : f4)
      for (auto c : f5) emit(3, {1, 2}, b, c, {0, p[0], p[1]});
  // 4: Jacobiator on sink 0 and two wedges; wedges 3,4 on sinks 1,2.
  for (auto p : wedge_pairs)
    for (int y : s3)
      for (int z : s4)
        for (auto c : f5) emit(4, {1, y}, {2, z}, c, {0, p[0], p[1]});
  // 5: Jacobiator on the wedges; wedge 3 on sinks 0,1, wedge 4 on sink 2.
  for (int z : s4)
    for (auto c : f5) emit(5, {0, 1}, {2, z}, c, {3, 4, 5});
  // 6: Jacobiator on the wedges; each wedge on one sink.
  for (int y : s3)
    for (int z : s4)
      for (int u : s5) emit(6, {0, y}, {1, z}, {2, u}, {3, 4, 5});
  return out;
}

std::vector<AnsatzPattern> generate_ansatz_quadratic(bool tadpoles) {
  // Sinks 0..2, wedge 3, Jacobiators 4 and 5.
  std::vector<TargetPair> wedges;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (tadpoles || (a != 3 && b != 3)) wedges.push_back({a, b});
  auto triples = [](int self) {
    std::vector<JacobiatorTriple> out;
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        for (int c = b + 1; c < 6; ++c)
          if (a != self && b != self && c != self) out.push_back({a, b, c});
    return out;
  };
  const auto j1 = triples(4), j2 = triples(5);
  std::set<LeibnizGraph> seen;
  std::vector<AnsatzPattern> out;
  for (const auto& w : wedges)
    for (const auto& a : j1)
      for (const auto& b : j2) {
        LeibnizGraph g(3, {w}, {a, b});
        const auto deg = g.in_degrees();
        if (deg[0] != 1 || deg[1] != 1 || deg[2] != 1) continue;
        auto key = skew_class(g);
        if (key.sign == 0 || !seen.insert(key.graph).second) continue;
        out.push_back({key.graph, 0});
      }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.graph < y.graph; });
  return out;
}

}  // namespace kgraph
