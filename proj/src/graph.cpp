#include "kgraph/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "kgraph/text.hpp"

namespace kgraph {

KontsevichGraph::KontsevichGraph(int sink_count, std::vector<TargetPair> targets)
    : sink_count_(sink_count), targets_(std::move(targets)) {
  if (sink_count_ < 0) throw std::invalid_argument("negative sink count");
  const int nv = vertex_count();
  for (const auto& t : targets_)
    for (int v : t)
      if (v < 0 || v >= nv)
        throw std::invalid_argument("target " + std::to_string(v) + " out of range [0, " +
                                    std::to_string(nv) + ")");
}

std::vector<int> KontsevichGraph::in_degrees() const {
  std::vector<int> deg(vertex_count(), 0);
  for (const auto& t : targets_) {
    ++deg[t[0]];
    ++deg[t[1]];
  }
  return deg;
}

bool KontsevichGraph::has_double_edge() const {
  return std::any_of(targets_.begin(), targets_.end(), [](const TargetPair& t) { return t[0] == t[1]; });
}

bool KontsevichGraph::is_multivector() const {
  const auto deg = in_degrees();
  return std::all_of(deg.begin(), deg.begin() + sink_count_, [](int d) { return d == 1; });
}

KontsevichGraph KontsevichGraph::with_sinks_permuted(std::span<const int> perm) const {
  auto t = targets_;
  for (auto& p : t)
    for (int& v : p)
      if (v < sink_count_) v = perm[v];
  return KontsevichGraph(sink_count_, std::move(t));
}

NormalForm normal_form(const KontsevichGraph& g) {
  const int m = g.sink_count();
  const int n = g.internal_count();
  if (g.has_double_edge()) {
    auto t = g.targets();
    for (auto& p : t)
      if (p[0] > p[1]) std::swap(p[0], p[1]);
    std::sort(t.begin(), t.end());
    return {KontsevichGraph(m, std::move(t)), 0};
  }

  // order[p] = old index of the internal vertex placed at new position p.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> relabel(n);
  std::vector<TargetPair> best, cur(n);
  int best_sign = 0;
  do {
    for (int p = 0; p < n; ++p) relabel[order[p]] = p;
    auto map = [&](int v) { return v < m ? v : m + relabel[v - m]; };
    int sign = 1;
    // -1: still equal to best so far, 1: already greater, 0: already smaller
    int state = best.empty() ? 0 : -1;
    for (int p = 0; p < n; ++p) {
      const auto& src = g.targets()[order[p]];
      TargetPair t{map(src[0]), map(src[1])};
      if (t[0] > t[1]) {
        std::swap(t[0], t[1]);
        sign = -sign;
      }
      cur[p] = t;
      if (state == -1) {
        if (t < best[p]) state = 0;
        else if (best[p] < t) {
          state = 1;
          break;
        }
      }
    }
    if (state == 1) continue;
    if (state == 0) {
      best = cur;
      best_sign = sign;
    } else if (sign != best_sign) {
      best_sign = 0;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  if (n == 0) best_sign = 1;
  return {KontsevichGraph(m, std::move(best)), best_sign};
}

std::string encode(const KontsevichGraph& g) {
  std::ostringstream os;
  os << g.sink_count() << ' ' << g.internal_count();
  for (const auto& t : g.targets()) os << ' ' << t[0] << ' ' << t[1];
  return os.str();
}

std::pair<KontsevichGraph, Rational> parse_graph_line(std::string_view line) {
  const auto tok = split_tokens(line);
  if (tok.size() < 3) throw ParseError("wrong token count: expected 'm n targets... coeff'");
  const int m = parse_int(tok[0]);
  const int n = parse_int(tok[1]);
  if (m < 0 || n < 0) throw ParseError("negative vertex count");
  if (tok.size() != static_cast<std::size_t>(2 * n + 3))
    throw ParseError("wrong token count: expected " + std::to_string(2 * n + 3) + ", got " +
                     std::to_string(tok.size()));
  std::vector<TargetPair> t(n);
  for (int k = 0; k < n; ++k) t[k] = {parse_int(tok[2 + 2 * k]), parse_int(tok[3 + 2 * k])};
  Rational c;
  try {
    c = parse_rational(tok.back());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  try {
    return {KontsevichGraph(m, std::move(t)), c};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string format_graph_line(const KontsevichGraph& g, const Rational& c) {
  return encode(g) + ' ' + to_string(c);
}

int permutation_sign(std::span<const int> perm) {
  int s = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) s = -s;
  return s;
}

}  // namespace kgraph
