#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace kgraph {

std::vector<std::string_view> split_tokens(std::string_view line);

// Throws ParseError unless `tok` is a (possibly signed) decimal integer.
int parse_int(std::string_view tok);

// Removes a '#' comment and surrounding whitespace.
std::string_view strip_comment(std::string_view line);

// A non-empty, comment-stripped line with its 1-based line number.
struct SourceLine {
  int number;
  std::string text;
};

std::vector<SourceLine> read_content_lines(std::istream& in);

}  // namespace kgraph
