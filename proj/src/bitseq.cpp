#include "ccslab/bitseq.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ccslab/errors.hpp"

namespace ccslab {

BinaryWord::BinaryWord(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) push_back(b);
}

BinaryWord::BinaryWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("binary word entries must be 0 or 1");
  }
}

BinaryWord BinaryWord::parse(std::string_view text) {
  BinaryWord w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') {
      throw ParseError("expected '0' or '1'", std::string(text), i);
    }
    w.bits_.push_back(static_cast<std::uint8_t>(text[i] - '0'));
  }
  return w;
}

BinaryWord BinaryWord::repeat(int bit, std::size_t count) {
  BinaryWord w;
  for (std::size_t i = 0; i < count; ++i) w.push_back(bit);
  return w;
}

void BinaryWord::push_back(int bit) {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument("binary word entries must be 0 or 1");
  }
  bits_.push_back(static_cast<std::uint8_t>(bit));
}

BinaryWord BinaryWord::concat(const BinaryWord& tail) const {
  BinaryWord w = *this;
  w.bits_.insert(w.bits_.end(), tail.bits_.begin(), tail.bits_.end());
  return w;
}

BinaryWord BinaryWord::append(int bit) const {
  BinaryWord w = *this;
  w.push_back(bit);
  return w;
}

BinaryWord BinaryWord::take(std::size_t n) const {
  n = std::min(n, size());
  return BinaryWord(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + n));
}

bool BinaryWord::is_prefix_of(const BinaryWord& other) const noexcept {
  return size() <= other.size() &&
         std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

std::string BinaryWord::to_string() const {
  std::string s;
  s.reserve(size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

BinaryWord meet(const BinaryWord& a, const BinaryWord& b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return a.take(n);
}

std::vector<BinaryWord> words_of_length(std::size_t n) {
  std::vector<BinaryWord> out;
  if (n >= 8 * sizeof(std::size_t) - 1) throw DepthError("word length too large");
  const std::size_t count = std::size_t{1} << n;
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    BinaryWord w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(static_cast<int>((code >> (n - 1 - i)) & 1U));
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<BinaryWord> words_up_to(std::size_t n) {
  std::vector<BinaryWord> out;
  for (std::size_t len = 0; len <= n; ++len) {
    auto level = words_of_length(len);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// ---------------------------------------------------------------------------

CantorPoint::CantorPoint() : period_{0} {}

CantorPoint::CantorPoint(BinaryWord prefix, BinaryWord period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw std::invalid_argument("period must be non-empty");
  canonicalize();
}

void CantorPoint::canonicalize() {
  // Primitive root of the period.
  const std::size_t n = period_.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = period_[i] == period_[i - d];
    if (periodic) {
      period_ = period_.take(d);
      break;
    }
  }
  // Rotate trailing prefix bits into the period.
  while (!prefix_.empty() && prefix_.back() == period_.back()) {
    std::vector<std::uint8_t> rotated;
    rotated.reserve(period_.size());
    rotated.push_back(static_cast<std::uint8_t>(period_.back()));
    rotated.insert(rotated.end(), period_.bits().begin(), period_.bits().end() - 1);
    period_ = BinaryWord(std::move(rotated));
    prefix_.pop_back();
  }
}

CantorPoint CantorPoint::parse(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    throw ParseError("expected '(' starting the period", std::string(text), text.size());
  }
  if (text.empty() || text.back() != ')') {
    throw ParseError("expected ')' closing the period", std::string(text), text.size());
  }
  const auto close = text.size() - 1;
  if (close == open + 1) {
    throw ParseError("period must be non-empty", std::string(text), open + 1);
  }
  BinaryWord prefix;
  BinaryWord period;
  for (std::size_t i = 0; i < close; ++i) {
    if (i == open) continue;
    const char c = text[i];
    if (c != '0' && c != '1') {
      throw ParseError("expected '0' or '1'", std::string(text), i);
    }
    (i < open ? prefix : period).push_back(c - '0');
  }
  return CantorPoint(std::move(prefix), std::move(period));
}

CantorPoint CantorPoint::zeros() { return CantorPoint({}, BinaryWord{0}); }
CantorPoint CantorPoint::ones() { return CantorPoint({}, BinaryWord{1}); }
CantorPoint CantorPoint::alternating() { return CantorPoint({}, BinaryWord{0, 1}); }

CantorPoint CantorPoint::with_tail(const BinaryWord& word, int bit) {
  return CantorPoint(word, BinaryWord{bit});
}

int CantorPoint::bit_at(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  return period_[(i - prefix_.size()) % period_.size()];
}

BinaryWord CantorPoint::prefix_of(std::size_t n) const {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>(bit_at(i));
  return BinaryWord(std::move(bits));
}

bool CantorPoint::extends(const BinaryWord& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (bit_at(i) != w[i]) return false;
  }
  return true;
}

std::size_t CantorPoint::decision_bound(const CantorPoint& other) const {
  return std::max(prefix_.size(), other.prefix_.size()) +
         std::lcm(period_.size(), other.period_.size());
}

std::optional<std::size_t> CantorPoint::first_difference(const CantorPoint& other) const {
  const std::size_t n = decision_bound(other);
  for (std::size_t i = 0; i < n; ++i) {
    if (bit_at(i) != other.bit_at(i)) return i;
  }
  return std::nullopt;
}

bool CantorPoint::is_zeros() const { return prefix_.empty() && period_ == BinaryWord{0}; }
bool CantorPoint::is_ones() const { return prefix_.empty() && period_ == BinaryWord{1}; }
bool CantorPoint::is_dyadic() const { return period_ == BinaryWord{0}; }

CantorPoint CantorPoint::prepend(const BinaryWord& word) const {
  return CantorPoint(word.concat(prefix_), period_);
}

std::string CantorPoint::to_string() const {
  return prefix_.to_string() + "(" + period_.to_string() + ")";
}

std::strong_ordering lex_compare(const CantorPoint& x, const CantorPoint& y) {
  const auto diff = x.first_difference(y);
  if (!diff) return std::strong_ordering::equal;
  return x.bit_at(*diff) < y.bit_at(*diff) ? std::strong_ordering::less
                                           : std::strong_ordering::greater;
}

}  // namespace ccslab
