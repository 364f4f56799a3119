#include "gbs/gog_format.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace gbs {

ParseError::ParseError(std::string message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      message_(std::move(message)),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  enum class Kind { identifier, integer, punct, end };
  Kind kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) ++i;
      out.push_back({Token::Kind::identifier, std::string(line.substr(start, i - start)), start + 1});
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               ((c == '-' || c == '+') && i + 1 < line.size() &&
                std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
      ++i;
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      out.push_back({Token::Kind::integer, std::string(line.substr(start, i - start)), start + 1});
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      i += 2;
      out.push_back({Token::Kind::punct, "->", start + 1});
    } else if (c == ':' || c == '[' || c == ']' || c == ',') {
      ++i;
      out.push_back({Token::Kind::punct, std::string(1, c), start + 1});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_no, start + 1);
    }
  }
  out.push_back({Token::Kind::end, "", line.size() + 1});
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t line_no) : tokens_(std::move(tokens)), line_(line_no) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::end; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, peek().column); }

  std::string describe(const Token& t) const {
    return t.kind == Token::Kind::end ? "end of line" : "'" + t.text + "'";
  }

  std::string identifier(const std::string& what) {
    if (peek().kind != Token::Kind::identifier) fail("expected " + what + ", found " + describe(peek()));
    return tokens_[pos_++].text;
  }

  void punct(const std::string& p) {
    if (peek().kind != Token::Kind::punct || peek().text != p)
      fail("expected '" + p + "', found " + describe(peek()));
    ++pos_;
  }

  bool accept(const std::string& p) {
    if (peek().kind == Token::Kind::punct && peek().text == p) {
      ++pos_;
      return true;
    }
    return false;
  }

  void keyword(const std::string& k) {
    if (peek().kind != Token::Kind::identifier || peek().text != k)
      fail("expected '" + k + "', found " + describe(peek()));
    ++pos_;
  }

  BigInt integer() {
    if (peek().kind != Token::Kind::integer) fail("expected integer, found " + describe(peek()));
    std::string text = tokens_[pos_++].text;
    if (text[0] == '+') text.erase(0, 1);
    return BigInt(text);
  }

  IntMatrix matrix() {
    std::size_t column = peek().column;
    punct("[");
    std::vector<std::vector<BigInt>> rows;
    do {
      punct("[");
      std::vector<BigInt> row;
      do row.push_back(integer());
      while (accept(","));
      punct("]");
      rows.push_back(std::move(row));
    } while (accept(","));
    punct("]");
    for (const auto& row : rows)
      if (row.size() != rows.size()) throw ParseError("matrix must be square", line_, column);
    IntMatrix m(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = rows[r][c];
    return m;
  }

  void finish() {
    if (!at_end()) fail("unexpected " + describe(peek()));
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

}  // namespace

GoGSpec parse_gog(std::string_view text) {
  GoGSpec spec;
  bool have_rank = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view line = text.substr(start, stop - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = stop + 1;

    LineParser p(tokenize(line, line_no), line_no);
    if (p.at_end()) continue;
    std::string head = p.identifier("declaration");
    if (head == "rank") {
      if (have_rank) throw ParseError("duplicate rank declaration", line_no, 1);
      BigInt n = p.integer();
      if (!n.fits_sint_p()) throw ParseError("rank out of range", line_no, 1);
      spec.rank = static_cast<int>(n.get_si());
      have_rank = true;
    } else if (head == "vertex") {
      spec.vertices.push_back(p.identifier("vertex name"));
    } else if (head == "edge") {
      EdgeSpec e;
      e.name = p.identifier("edge name");
      p.punct(":");
      e.source = p.identifier("source vertex");
      p.punct("->");
      e.target = p.identifier("target vertex");
      p.keyword("alpha");
      e.alpha = p.matrix();
      p.keyword("omega");
      e.omega = p.matrix();
      spec.edges.push_back(std::move(e));
    } else if (head == "tree") {
      if (spec.spanning_tree) throw ParseError("duplicate tree declaration", line_no, 1);
      std::vector<std::string> names;
      while (!p.at_end()) {
        names.push_back(p.identifier("edge name"));
        p.accept(",");
      }
      spec.spanning_tree = std::move(names);
    } else {
      throw ParseError("unknown declaration '" + head + "'", line_no, 1);
    }
    p.finish();
  }
  if (!have_rank) throw ParseError("missing rank declaration", 1, 1);
  return spec;
}

namespace {

std::string render_matrix(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.dim(); ++r) {
    s += r ? ",[" : "[";
    for (std::size_t c = 0; c < m.dim(); ++c) s += (c ? "," : "") + m(r, c).get_str();
    s += "]";
  }
  return s + "]";
}

}  // namespace

std::string render_gog(const GoGSpec& spec) {
  std::string out = "rank " + std::to_string(spec.rank) + "\n";
  for (const auto& v : spec.vertices) out += "vertex " + v + "\n";
  for (const auto& e : spec.edges)
    out += "edge " + e.name + ": " + e.source + " -> " + e.target + " alpha " + render_matrix(e.alpha) +
           " omega " + render_matrix(e.omega) + "\n";
  if (spec.spanning_tree) {
    out += "tree";
    for (const auto& t : *spec.spanning_tree) out += " " + t;
    out += "\n";
  }
  return out;
}

GoGSpec load_gog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gog(buf.str());
}

}  // namespace gbs
