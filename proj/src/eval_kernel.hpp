#pragma once
// Integer-coefficient graph evaluation kernel shared by poisson.cpp.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgraph/graph.hpp"
#include "kgraph/polynomial.hpp"

namespace kgraph::detail {

struct Overflow {};

// int64 that throws Overflow instead of wrapping.
struct CheckedInt {
  std::int64_t v = 0;
  CheckedInt() = default;
  CheckedInt(std::int64_t x) : v(x) {}
};

inline CheckedInt operator+(CheckedInt a, CheckedInt b) {
  std::int64_t r;
  if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
  return r;
}
inline CheckedInt operator*(CheckedInt a, CheckedInt b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
  return r;
}
inline bool is_zero(CheckedInt a) { return a.v == 0; }
inline bool is_zero(const Integer& a) { return a == 0; }
inline Integer to_integer(CheckedInt a) { return Integer(static_cast<long>(a.v)); }
inline Integer to_integer(const Integer& a) { return a; }
inline CheckedInt from_integer(const Integer& a, CheckedInt) {
  if (!a.fits_slong_p()) throw Overflow{};
  return CheckedInt(a.get_si());
}
inline Integer from_integer(const Integer& a, const Integer&) { return a; }

template <class C>
using IntPoly = std::vector<std::pair<Monomial, C>>;

template <class C>
void normalize(IntPoly<C>& p) {
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < p.size();) {
    Monomial m = p[r].first;
    C s = p[r].second;
    for (++r; r < p.size() && p[r].first == m; ++r) s = s + p[r].second;
    if (!is_zero(s)) p[w++] = {m, s};
  }
  p.resize(w);
}

template <class C>
void multiply(const IntPoly<C>& a, const IntPoly<C>& b, IntPoly<C>& out) {
  out.clear();
  out.reserve(a.size() * b.size());
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) out.emplace_back(ma + mb, ca * cb);
  normalize(out);
}

template <class C>
IntPoly<C> derivative(const IntPoly<C>& p, int var) {
  IntPoly<C> out;
  for (const auto& [m, c] : p) {
    const int e = exponent(m, var);
    if (e > 0) out.emplace_back(m - variable_unit(var), c * C(e));
  }
  return out;
}

// Output: packed sink key (4 bits per incoming edge index, sinks in order,
// each sink's indices sorted) -> integer polynomial.
template <class C>
class GraphKernel {
 public:
  // pmat[a*d+b] holds the (already integer-scaled) component P^{ab}.
  GraphKernel(const KontsevichGraph& g, int d, const std::vector<IntPoly<C>>& pmat)
      : g_(g), d_(d), m_(g.sink_count()), n_(g.internal_count()), pmat_(pmat) {
    plan();
  }

  std::unordered_map<std::uint64_t, IntPoly<C>> run() {
    out_.clear();
    idx_.assign(2 * n_, -1);
    level_.assign(n_ + 1, {});
    level_[0] = {{Monomial{0}, C(1)}};
    recurse(0);
    std::unordered_map<std::uint64_t, IntPoly<C>> res;
    for (auto& [k, acc] : out_) {
      normalize(acc.poly);
      if (!acc.poly.empty()) res.emplace(k, std::move(acc.poly));
    }
    return res;
  }

  const std::vector<std::vector<int>>& sink_in_edges() const { return sink_in_; }

 private:
  void plan() {
    in_edges_.assign(n_, {});
    sink_in_.assign(m_, {});
    for (int k = 0; k < n_; ++k)
      for (int s = 0; s < 2; ++s) {
        const int t = g_.targets()[k][s];
        if (t < m_) sink_in_[t].push_back(2 * k + s);
        else in_edges_[t - m_].push_back(2 * k + s);
      }
    int total_sink = 0;
    for (const auto& e : sink_in_) total_sink += static_cast<int>(e.size());
    if (total_sink > 16 || d_ > 16) throw std::invalid_argument("eval_graph: too many sink edges");
    std::vector<char> done(n_, 0), assigned(2 * n_, 0);
    for (int step = 0; step < n_; ++step) {
      int best = -1, best_new = 0;
      for (int v = 0; v < n_; ++v) {
        if (done[v]) continue;
        int c = !assigned[2 * v] + !assigned[2 * v + 1];
        for (int e : in_edges_[v]) c += !assigned[e];
        if (best < 0 || c < best_new) {
          best = v;
          best_new = c;
        }
      }
      done[best] = 1;
      order_.push_back(best);
      std::vector<int> fresh;
      auto take = [&](int e) {
        if (!assigned[e]) {
          assigned[e] = 1;
          fresh.push_back(e);
        }
      };
      take(2 * best);
      take(2 * best + 1);
      for (int e : in_edges_[best]) take(e);
      new_edges_.push_back(fresh);
    }
    tables_.assign(2 * n_ + 1, {});
  }

  // Derivative of P^{ab} by the multiset of indices in `tuple`; nullptr if zero.
  const IntPoly<C>* factor(int a, int b, const std::vector<int>& tuple) {
    const int k = static_cast<int>(tuple.size());
    auto& table = tables_[k];
    std::size_t code = static_cast<std::size_t>(a * d_ + b);
    for (int t : tuple) code = code * d_ + t;
    if (table.slots.empty()) {
      std::size_t size = static_cast<std::size_t>(d_ * d_);
      for (int i = 0; i < k; ++i) size *= d_;
      table.slots.assign(size, -1);
    }
    int& slot = table.slots[code];
    if (slot == -1) {
      IntPoly<C> p = pmat_[a * d_ + b];
      for (int t : tuple) {
        if (p.empty()) break;
        p = derivative(p, t);
      }
      if (p.empty()) {
        slot = -2;
      } else {
        slot = static_cast<int>(table.polys.size());
        table.polys.push_back(std::move(p));
      }
    }
    return slot == -2 ? nullptr : &table.polys[slot];
  }

  void recurse(int level) {
    if (level == n_) {
      std::uint64_t key = 0;
      for (const auto& edges : sink_in_) {
        int buf[16];
        int c = 0;
        for (int e : edges) buf[c++] = idx_[e];
        std::sort(buf, buf + c);
        for (int i = 0; i < c; ++i) key = (key << 4) | static_cast<std::uint64_t>(buf[i]);
      }
      auto& acc = out_[key];
      acc.poly.insert(acc.poly.end(), level_[n_].begin(), level_[n_].end());
      if (acc.poly.size() > 2 * acc.compact_size + 4096) {
        normalize(acc.poly);
        acc.compact_size = acc.poly.size();
      }
      return;
    }
    const int v = order_[level];
    const auto& fresh = new_edges_[level];
    const int r = static_cast<int>(fresh.size());
    for (int e : fresh) idx_[e] = 0;
    std::vector<int> tuple(in_edges_[v].size());
    while (true) {
      const int a = idx_[2 * v], b = idx_[2 * v + 1];
      if (a != b) {
        for (std::size_t t = 0; t < tuple.size(); ++t) tuple[t] = idx_[in_edges_[v][t]];
        if (const auto* f = factor(a, b, tuple)) {
          multiply(level_[level], *f, level_[level + 1]);
          if (!level_[level + 1].empty()) recurse(level + 1);
        }
      }
      int q = 0;
      while (q < r && ++idx_[fresh[q]] == d_) idx_[fresh[q++]] = 0;
      if (q == r) break;
    }
    for (int e : fresh) idx_[e] = -1;
  }

  // Leaves are appended and compacted only when the buffer has grown.
  struct Accumulator {
    IntPoly<C> poly;
    std::size_t compact_size = 0;
  };

  struct Table {
    std::vector<int> slots;
    std::vector<IntPoly<C>> polys;
  };

  const KontsevichGraph& g_;
  int d_, m_, n_;
  const std::vector<IntPoly<C>>& pmat_;
  std::vector<std::vector<int>> in_edges_, sink_in_, new_edges_;
  std::vector<int> order_, idx_;
  std::vector<IntPoly<C>> level_;
  std::vector<Table> tables_;
  std::unordered_map<std::uint64_t, Accumulator> out_;
};

}  // namespace kgraph::detail
