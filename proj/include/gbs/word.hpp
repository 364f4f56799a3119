#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gbs {

struct Syllable {
  std::string letter;
  std::int64_t exponent = 1;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A group word: letters with integer exponents. Always kept normalized:
/// adjacent syllables with the same letter are merged and zero exponents are
/// dropped.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Syllable> syllables);

  static Word letter(std::string name, std::int64_t exponent = 1);
  /// Parses space- or '*'-separated tokens of the form name or name^k.
  /// "1" and the empty string denote the empty word. Throws
  /// std::invalid_argument on malformed input.
  static Word parse(std::string_view text);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool empty() const { return syllables_.empty(); }
  /// Sum of |exponent| over syllables: the length over letters and inverses.
  std::uint64_t length() const;

  Word inverse() const;
  Word power(std::int64_t k) const;

  /// Letters joined by spaces, exponents as name^k.
  std::string str() const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Syllable> syllables_;
};

/// Letter-by-letter expansion, each entry carrying exponent +1 or -1.
std::vector<Syllable> expand(const Word& w);

bool is_identifier(std::string_view s);

}  // namespace gbs
