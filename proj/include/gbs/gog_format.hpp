#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gbs/graph_of_groups.hpp"

namespace gbs {

/// Syntax error in a .gog document; positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column);
  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// Grammar, one declaration per line:
///   rank <n>
///   vertex <name>
///   edge <name>: <src> -> <dst> alpha [[..],..] omega [[..],..]
///   tree <edge names>
/// Text after '#' is a comment. Semantic checks are left to validate().
GoGSpec parse_gog(std::string_view text);

/// Canonical text; parse_gog(render_gog(s)) == s.
std::string render_gog(const GoGSpec& spec);

/// Reads and parses a file. Throws std::runtime_error when it cannot be read.
GoGSpec load_gog(const std::string& path);

}  // namespace gbs
