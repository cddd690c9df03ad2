#include "kgraph/graph_sum.hpp"

#include <fstream>
#include <sstream>

#include "kgraph/text.hpp"

namespace kgraph {

void GraphSum::add(const KontsevichGraph& g, const Rational& c) {
  if (c == 0) return;
  auto nf = normal_form(g);
  if (nf.sign == 0) return;
  add_normalized(nf.graph, nf.sign > 0 ? c : Rational(-c));
}

void GraphSum::add_normalized(const KontsevichGraph& g, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(g, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void GraphSum::add(const GraphSum& other, const Rational& scale) {
  if (scale == 0) return;
  for (const auto& [g, c] : other.terms_) add_normalized(g, c * scale);
}

GraphSum& GraphSum::operator+=(const GraphSum& o) {
  add(o, 1);
  return *this;
}

GraphSum& GraphSum::operator-=(const GraphSum& o) {
  add(o, -1);
  return *this;
}

GraphSum& GraphSum::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [g, v] : terms_) v *= c;
  return *this;
}

Rational GraphSum::coefficient(const KontsevichGraph& g) const {
  auto nf = normal_form(g);
  if (nf.sign == 0) return 0;
  auto it = terms_.find(nf.graph);
  if (it == terms_.end()) return 0;
  return nf.sign > 0 ? it->second : Rational(-it->second);
}

std::optional<int> GraphSum::uniform_sink_count() const {
  std::optional<int> m;
  for (const auto& [g, c] : terms_) {
    if (m && *m != g.sink_count()) return std::nullopt;
    m = g.sink_count();
  }
  return m;
}

std::string GraphSum::to_string() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

void GraphSum::write(std::ostream& out) const {
  for (const auto& [g, c] : terms_) out << format_graph_line(g, c) << '\n';
}

GraphSum GraphSum::from_terms(const std::vector<Term>& terms) {
  GraphSum s;
  for (const auto& t : terms) s.add(t.graph, t.coeff);
  return s;
}

std::vector<Term> read_terms(std::istream& in) {
  std::vector<Term> out;
  for (const auto& line : read_content_lines(in)) {
    try {
      auto [g, c] = parse_graph_line(line.text);
      out.push_back({std::move(g), std::move(c)});
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line.number) + ": " + e.what());
    }
  }
  return out;
}

GraphSum read_graph_sum(std::istream& in) { return GraphSum::from_terms(read_terms(in)); }

GraphSum read_graph_sum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_graph_sum(in);
}

std::optional<std::vector<Term>> in_layout(const GraphSum& s, const std::vector<Term>& layout) {
  std::vector<Term> out;
  GraphSum covered;
  for (const auto& t : layout) {
    const Rational c = s.coefficient(t.graph);
    auto nf = normal_form(t.graph);
    if (nf.sign != 0) covered.add_normalized(nf.graph, 1);
    out.push_back({t.graph, c});
  }
  for (const auto& [g, c] : s.terms())
    if (covered.coefficient(g) == 0) return std::nullopt;
  return out;
}

}  // namespace kgraph
