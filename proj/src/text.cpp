#include "kgraph/text.hpp"

#include <charconv>

#include "kgraph/graph.hpp"

namespace kgraph {

namespace {
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }
}  // namespace

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_int(std::string_view tok) {
  int v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last || first == last)
    throw ParseError("malformed integer '" + std::string(tok) + "'");
  return v;
}

std::string_view strip_comment(std::string_view line) {
  if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
  std::size_t b = 0, e = line.size();
  while (b < e && is_space(line[b])) ++b;
  while (e > b && is_space(line[e - 1])) --e;
  return line.substr(b, e - b);
}

std::vector<SourceLine> read_content_lines(std::istream& in) {
  std::vector<SourceLine> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto s = strip_comment(line);
    if (!s.empty()) out.push_back({number, std::string(s)});
  }
  return out;
}

}  // namespace kgraph
