#pragma once

// Finite binary words and eventually periodic points of Cantor space.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccslab {

/// A finite word over {0,1}. Ordered lexicographically, with a proper prefix
/// sorting before its extensions.
class BinaryWord {
 public:
  BinaryWord() = default;
  BinaryWord(std::initializer_list<int> bits);
  explicit BinaryWord(std::vector<std::uint8_t> bits);

  /// Parses a string of '0'/'1' characters. Throws ParseError otherwise.
  static BinaryWord parse(std::string_view text);
  /// `bit` repeated `count` times.
  static BinaryWord repeat(int bit, std::size_t count);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  int back() const { return bits_.back(); }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  void push_back(int bit);
  void pop_back() { bits_.pop_back(); }

  BinaryWord concat(const BinaryWord& tail) const;
  BinaryWord append(int bit) const;
  /// First n bits (n is clamped to size()).
  BinaryWord take(std::size_t n) const;

  /// True iff this word is a (not necessarily proper) prefix of `other`.
  bool is_prefix_of(const BinaryWord& other) const noexcept;

  std::string to_string() const;

  friend bool operator==(const BinaryWord&, const BinaryWord&) = default;
  friend std::strong_ordering operator<=>(const BinaryWord& a,
                                          const BinaryWord& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

/// Longest common prefix of two words.
BinaryWord meet(const BinaryWord& a, const BinaryWord& b);

/// All words of length exactly n, in lexicographic order.
std::vector<BinaryWord> words_of_length(std::size_t n);
/// All words of length <= n, ordered by length then lexicographically.
std::vector<BinaryWord> words_up_to(std::size_t n);

/// An eventually periodic infinite binary sequence prefix ⌢ period^∞.
///
/// The stored form is canonical: the period is primitive and the prefix
/// never ends with the last bit of the period (that bit would rotate into
/// the period). Equal sequences therefore have identical members.
class CantorPoint {
 public:
  /// 0^∞.
  CantorPoint();
  /// Throws std::invalid_argument if `period` is empty.
  CantorPoint(BinaryWord prefix, BinaryWord period);

  /// Textual form `prefix(period)`, e.g. `10(01)`.
  static CantorPoint parse(std::string_view text);

  static CantorPoint zeros();
  static CantorPoint ones();
  /// (01)^∞
  static CantorPoint alternating();
  /// word ⌢ bit^∞
  static CantorPoint with_tail(const BinaryWord& word, int bit);

  const BinaryWord& prefix() const noexcept { return prefix_; }
  const BinaryWord& period() const noexcept { return period_; }

  int bit_at(std::size_t i) const;
  BinaryWord prefix_of(std::size_t n) const;
  bool extends(const BinaryWord& w) const;

  /// Number of leading bits that must be compared against another point
  /// before equality can be concluded.
  std::size_t decision_bound(const CantorPoint& other) const;
  /// First index where the two sequences differ, or nullopt when equal.
  std::optional<std::size_t> first_difference(const CantorPoint& other) const;

  bool is_zeros() const;
  bool is_ones() const;
  /// Eventually zero (includes 0^∞).
  bool is_dyadic() const;

  /// word ⌢ this
  CantorPoint prepend(const BinaryWord& word) const;

  std::string to_string() const;

  friend bool operator==(const CantorPoint&, const CantorPoint&) = default;

 private:
  void canonicalize();

  BinaryWord prefix_;
  BinaryWord period_;
};

/// Lexicographic order of the bit streams.
std::strong_ordering lex_compare(const CantorPoint& x, const CantorPoint& y);

inline std::strong_ordering operator<=>(const CantorPoint& x,
                                        const CantorPoint& y) {
  return lex_compare(x, y);
}

}  // namespace ccslab
