#include "gbs/word.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace gbs {

namespace {

void push_syllable(std::vector<Syllable>& out, Syllable s) {
  if (s.exponent == 0) return;
  if (!out.empty() && out.back().letter == s.letter) {
    out.back().exponent += s.exponent;
    if (out.back().exponent == 0) out.pop_back();
    return;
  }
  out.push_back(std::move(s));
}

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

Word::Word(std::vector<Syllable> syllables) {
  for (auto& s : syllables) push_syllable(syllables_, std::move(s));
}

Word Word::letter(std::string name, std::int64_t exponent) {
  return Word({Syllable{std::move(name), exponent}});
}

Word Word::parse(std::string_view text) {
  std::vector<Syllable> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*'))
      ++i;
  };
  skip();
  if (text.substr(i) == "1") return Word();
  while (i < text.size()) {
    std::size_t start = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
      ++i;
    std::string_view name = text.substr(start, i - start);
    if (!is_identifier(name))
      throw std::invalid_argument("malformed word near position " + std::to_string(start));
    std::int64_t exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t exp_start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      std::string digits(text.substr(exp_start, i - exp_start));
      if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
      if (ec != std::errc() || ptr != digits.data() + digits.size())
        throw std::invalid_argument("malformed exponent near position " + std::to_string(exp_start));
    }
    push_syllable(out, Syllable{std::string(name), exponent});
    skip();
  }
  Word w;
  w.syllables_ = std::move(out);
  return w;
}

std::uint64_t Word::length() const {
  std::uint64_t n = 0;
  for (const auto& s : syllables_) n += static_cast<std::uint64_t>(std::llabs(s.exponent));
  return n;
}

Word Word::inverse() const {
  Word w;
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
    w.syllables_.push_back({it->letter, -it->exponent});
  return w;
}

Word Word::power(std::int64_t k) const {
  Word base = k < 0 ? inverse() : *this;
  Word out;
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out = out * base;
  return out;
}

std::string Word::str() const {
  if (syllables_.empty()) return "1";
  std::string out;
  for (const auto& s : syllables_) {
    if (!out.empty()) out += ' ';
    out += s.letter;
    if (s.exponent != 1) out += "^" + std::to_string(s.exponent);
  }
  return out;
}

Word operator*(const Word& a, const Word& b) {
  Word out = a;
  for (const auto& s : b.syllables_) push_syllable(out.syllables_, s);
  return out;
}

std::vector<Syllable> expand(const Word& w) {
  std::vector<Syllable> out;
  for (const auto& s : w.syllables()) {
    std::int64_t step = s.exponent > 0 ? 1 : -1;
    for (std::int64_t i = 0; i != s.exponent; i += step) out.push_back({s.letter, step});
  }
  return out;
}

}  // namespace gbs
