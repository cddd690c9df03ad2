#include "kgraph/graph_ops.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

namespace kgraph {

Integer factorial(int n) {
  Integer f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

std::vector<KontsevichGraph> insert_labelled(const KontsevichGraph& a, int i, const KontsevichGraph& b,
                                             LeibnizTargets mode) {
  const int ma = a.sink_count(), na = a.internal_count();
  const int mb = b.sink_count(), nb = b.internal_count();
  if (i < 0 || i >= ma) throw std::out_of_range("insert: sink index out of range");
  const int m = ma - 1 + mb;
  auto amap = [&](int v) {
    if (v < i) return v;
    if (v < ma) return v - 1 + mb;
    return m + (v - ma);
  };
  auto bmap = [&](int v) { return v < mb ? i + v : m + na + (v - mb); };

  std::vector<TargetPair> base;
  base.reserve(na + nb);
  std::vector<std::pair<int, int>> slots;  // (vertex index, side) of edges into sink i
  for (int k = 0; k < na; ++k) {
    TargetPair t{};
    for (int s = 0; s < 2; ++s) {
      const int v = a.targets()[k][s];
      if (v == i) {
        slots.emplace_back(k, s);
        t[s] = -1;
      } else {
        t[s] = amap(v);
      }
    }
    base.push_back(t);
  }
  for (const auto& t : b.targets()) base.push_back({bmap(t[0]), bmap(t[1])});

  std::vector<int> choices;
  for (int v = mode == LeibnizTargets::AllVertices ? 0 : mb; v < mb + nb; ++v) choices.push_back(bmap(v));

  std::vector<KontsevichGraph> out;
  const int r = static_cast<int>(slots.size());
  const int c = static_cast<int>(choices.size());
  if (r > 0 && c == 0) return out;
  std::vector<int> idx(r, 0);
  while (true) {
    auto t = base;
    for (int q = 0; q < r; ++q) t[slots[q].first][slots[q].second] = choices[idx[q]];
    out.emplace_back(m, std::move(t));
    int q = 0;
    while (q < r && ++idx[q] == c) idx[q++] = 0;
    if (q == r) break;
  }
  return out;
}

GraphSum insert(const KontsevichGraph& a, int i, const KontsevichGraph& b, LeibnizTargets mode) {
  GraphSum s;
  for (const auto& g : insert_labelled(a, i, b, mode)) s.add(g, 1);
  return s;
}

GraphSum permute_sinks(const GraphSum& s, const std::vector<int>& perm) {
  GraphSum out;
  for (const auto& [g, c] : s.terms()) out.add(g.with_sinks_permuted(perm), c);
  return out;
}

GraphSum skew_symmetrize(const GraphSum& s, int m) {
  for (const auto& [g, c] : s.terms())
    if (g.sink_count() != m) throw std::invalid_argument("skew_symmetrize: mixed sink counts");
  GraphSum out;
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  const Rational w = Rational(1) / Rational(factorial(m));
  do {
    const Rational ws = permutation_sign(perm) > 0 ? w : Rational(-w);
    for (const auto& [g, c] : s.terms()) out.add(g.with_sinks_permuted(perm), c * ws);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

int arity_of(const GraphSum& s) {
  auto m = s.uniform_sink_count();
  if (!m) throw std::invalid_argument("schouten_bracket: mixed arity");
  return *m;
}

void check_multivector(const GraphSum& s, int arity) {
  for (const auto& [g, c] : s.terms()) {
    if (g.sink_count() != arity) throw std::invalid_argument("schouten_bracket: arity mismatch");
    if (!g.is_multivector()) throw std::invalid_argument("schouten_bracket: non-multivector term " + encode(g));
  }
}

int sign_pow(int e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

GraphSum schouten_bracket(const GraphSum& a, const GraphSum& b) {
  if (a.empty() || b.empty()) return {};
  return schouten_bracket(a, arity_of(a), b, arity_of(b));
}

GraphSum schouten_bracket(const GraphSum& a, int k, const GraphSum& b, int l) {
  if (a.empty() || b.empty()) return {};
  check_multivector(a, k);
  check_multivector(b, l);
  if (k + l - 1 < 0) throw std::invalid_argument("schouten_bracket: arity");
  GraphSum raw;
  for (const auto& [ga, ca] : a.terms()) {
    for (const auto& [gb, cb] : b.terms()) {
      const Rational c = ca * cb;
      for (int j = 0; j < l; ++j) {
        const int s = sign_pow(j) * sign_pow(j * k);
        for (const auto& g : insert_labelled(gb, j, ga)) raw.add(g, s * c);
      }
      for (int i = 0; i < k; ++i) {
        const int e = k - 1 - i;
        const int s = -sign_pow(e) * sign_pow(l * e);
        for (const auto& g : insert_labelled(ga, i, gb)) raw.add(g, s * c);
      }
    }
  }
  const int m = k + l - 1;
  Rational scale(factorial(m), factorial(k) * factorial(l));
  scale.canonicalize();
  GraphSum out = skew_symmetrize(raw, m);
  out *= scale;
  return out;
}

namespace {

template <class F>
void for_each_sink_permutation(int m, F&& f) {
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do f(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

int signed_stabilizer(const KontsevichGraph& g) {
  const auto base = normal_form(g);
  if (base.sign == 0) return 0;
  int total = 0;
  for_each_sink_permutation(g.sink_count(), [&](const std::vector<int>& perm) {
    auto nf = normal_form(g.with_sinks_permuted(perm));
    if (nf.graph == base.graph) total += permutation_sign(perm) * nf.sign * base.sign;
  });
  return total;
}

KontsevichGraph orbit_representative(const KontsevichGraph& g) {
  std::optional<KontsevichGraph> best;
  for_each_sink_permutation(g.sink_count(), [&](const std::vector<int>& perm) {
    auto nf = normal_form(g.with_sinks_permuted(perm));
    if (!best || nf.graph < *best) best = nf.graph;
  });
  return *best;
}

Rational orbit_coefficient(const GraphSum& s, const KontsevichGraph& r) {
  const int stab = signed_stabilizer(r);
  if (stab == 0) throw std::invalid_argument("orbit_coefficient: orbit cancels under skew-symmetrization");
  return s.coefficient(r) / Rational(stab);
}

GraphSum collect_orbits(const GraphSum& s) {
  GraphSum out;
  std::set<KontsevichGraph> seen;
  for (const auto& [g, c] : s.terms()) {
    auto rep = orbit_representative(g);
    if (!seen.insert(rep).second) continue;
    const int stab = signed_stabilizer(rep);
    if (stab == 0) continue;
    out.add_normalized(rep, s.coefficient(rep) / Rational(stab));
  }
  return out;
}

KontsevichGraph wedge_graph() { return KontsevichGraph(2, {{0, 1}}); }

KontsevichGraph gamma1_graph() { return KontsevichGraph(2, {{0, 1}, {2, 5}, {2, 3}, {2, 4}}); }

KontsevichGraph gamma2_prime_graph() { return KontsevichGraph(2, {{0, 5}, {2, 1}, {3, 2}, {4, 3}}); }

GraphSum jacobiator_sum() {
  GraphSum s;
  const int t[3] = {0, 1, 2};
  for (int r = 0; r < 3; ++r)
    s.add(KontsevichGraph(3, {{t[r], t[(r + 1) % 3]}, {3, t[(r + 2) % 3]}}), 1);
  return s;
}

GraphSum tetra_flow(const Rational& a, const Rational& b) {
  GraphSum s;
  s.add(gamma1_graph(), a);
  const Rational h = b / 2;
  const auto g2 = gamma2_prime_graph();
  const std::vector<int> swap{1, 0};
  s.add(g2, h);
  s.add(g2.with_sinks_permuted(swap), -h);
  return s;
}

GraphSum lhs_trivector(const Rational& a, const Rational& b) {
  GraphSum p;
  p.add(wedge_graph(), 1);
  return schouten_bracket(p, 2, tetra_flow(a, b), 2);
}

}  // namespace kgraph
