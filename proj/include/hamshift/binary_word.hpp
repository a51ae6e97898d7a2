#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace hamshift {

/// Finite word over {0,1}, packed 64 symbols per block.
///
/// Symbol 0 of the word is the most significant bit of block 0, so comparing
/// blocks numerically is lexicographic comparison of the words. Bits past
/// size() in the last block are always zero.
class BinaryWord {
 public:
  using block_type = std::uint64_t;
  static constexpr std::size_t block_bits = 64;

  BinaryWord() = default;

  /// All-zero word of the given length.
  explicit BinaryWord(std::size_t length)
      : blocks_(blocks_for(length), block_type{0}), size_(length) {}

  /// Parses the ASCII '0'/'1' text form.
  static BinaryWord parse(std::string_view text) {
    BinaryWord w(text.size());
    for (std::size_t p = 0; p < text.size(); ++p) {
      const char c = text[p];
      if (c == '1') {
        w.blocks_[p / block_bits] |= mask(p);
      } else if (c != '0') {
        throw std::invalid_argument("binary word: invalid symbol '" + std::string(1, c) +
                                    "' at position " + std::to_string(p));
      }
    }
    return w;
  }

  /// Word of length `length` whose symbols are the low `length` bits of
  /// `bits`, first symbol most significant.
  static BinaryWord from_bits(std::uint64_t bits, std::size_t length) {
    if (length > block_bits) throw std::invalid_argument("binary word: from_bits length > 64");
    BinaryWord w(length);
    if (length != 0) w.blocks_[0] = bits << (block_bits - length);
    return w;
  }

  [[nodiscard]] std::string str() const {
    std::string out(size_, '0');
    for (std::size_t p = 0; p < size_; ++p) {
      if ((*this)[p]) out[p] = '1';
    }
    return out;
  }

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t p) const noexcept {
    return (blocks_[p / block_bits] & mask(p)) != 0;
  }

  [[nodiscard]] bool at(std::size_t p) const {
    if (p >= size_) throw std::out_of_range("binary word: position out of range");
    return (*this)[p];
  }

  void set(std::size_t p, bool symbol) {
    if (p >= size_) throw std::out_of_range("binary word: position out of range");
    if (symbol) {
      blocks_[p / block_bits] |= mask(p);
    } else {
      blocks_[p / block_bits] &= ~mask(p);
    }
  }

  void flip(std::size_t p) {
    if (p >= size_) throw std::out_of_range("binary word: position out of range");
    blocks_[p / block_bits] ^= mask(p);
  }

  void push_back(bool symbol) {
    if (size_ % block_bits == 0) blocks_.push_back(0);
    ++size_;
    if (symbol) blocks_[(size_ - 1) / block_bits] |= mask(size_ - 1);
  }

  void append(const BinaryWord& other) {
    if (size_ % block_bits == 0) {
      blocks_.insert(blocks_.end(), other.blocks_.begin(), other.blocks_.end());
      size_ += other.size_;
      return;
    }
    for (std::size_t start = 0; start < other.size_; start += block_bits) {
      const std::size_t len = std::min(block_bits, other.size_ - start);
      append_bits(other.window64(start, len), len);
    }
  }

  /// Appends the low `length` bits of `bits`, most significant first.
  void append_bits(std::uint64_t bits, std::size_t length) {
    if (length == 0) return;
    const std::size_t off = size_ % block_bits;
    const block_type aligned = bits << (block_bits - length);
    if (off == 0) {
      blocks_.push_back(aligned);
    } else {
      blocks_.back() |= aligned >> off;
      if (off + length > block_bits) blocks_.push_back(aligned << (block_bits - off));
    }
    size_ += length;
  }

  /// Symbols [start, start+length) as the low bits of an integer, first
  /// symbol most significant. Requires length <= 64.
  [[nodiscard]] std::uint64_t window64(std::size_t start, std::size_t length) const noexcept {
    if (length == 0) return 0;
    const std::size_t b = start / block_bits;
    const std::size_t off = start % block_bits;
    block_type hi = blocks_[b] << off;
    if (off != 0 && b + 1 < blocks_.size()) hi |= blocks_[b + 1] >> (block_bits - off);
    return hi >> (block_bits - length);
  }

  /// Contiguous subword [start, start+length).
  [[nodiscard]] BinaryWord factor(std::size_t start, std::size_t length) const {
    if (start > size_ || length > size_ - start)
      throw std::out_of_range("binary word: factor out of range");
    BinaryWord out;
    out.blocks_.reserve(blocks_for(length));
    for (std::size_t p = 0; p < length; p += block_bits) {
      const std::size_t len = std::min(block_bits, length - p);
      out.append_bits(window64(start + p, len), len);
    }
    return out;
  }

  [[nodiscard]] std::span<const block_type> blocks() const noexcept {
    return {blocks_.data(), blocks_.size()};
  }

  [[nodiscard]] std::size_t count_ones() const noexcept {
    std::size_t c = 0;
    for (auto b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
  }

  friend bool operator==(const BinaryWord& a, const BinaryWord& b) noexcept {
    return a.size_ == b.size_ && std::equal(a.blocks_.begin(), a.blocks_.end(), b.blocks_.begin());
  }

  /// Lexicographic order with '0' < '1'; a proper prefix sorts first.
  friend std::strong_ordering operator<=>(const BinaryWord& a, const BinaryWord& b) noexcept {
    const std::size_t common = std::min(a.blocks_.size(), b.blocks_.size());
    for (std::size_t i = 0; i < common; ++i) {
      if (a.blocks_[i] != b.blocks_[i]) return a.blocks_[i] <=> b.blocks_[i];
    }
    return a.size_ <=> b.size_;
  }

  friend BinaryWord operator+(BinaryWord a, const BinaryWord& b) {
    a.append(b);
    return a;
  }

  friend std::ostream& operator<<(std::ostream& os, const BinaryWord& w) { return os << w.str(); }

 private:
  static constexpr std::size_t blocks_for(std::size_t length) noexcept {
    return (length + block_bits - 1) / block_bits;
  }
  static constexpr block_type mask(std::size_t p) noexcept {
    return block_type{1} << (block_bits - 1 - p % block_bits);
  }

  boost::container::small_vector<block_type, 2> blocks_;
  std::size_t size_ = 0;
};

struct BinaryWordHash {
  std::size_t operator()(const BinaryWord& w) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ w.size();
    for (auto b : w.blocks()) {
      h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h ^= h >> 31;
      h *= 0xbf58476d1ce4e5b9ULL;
    }
    h ^= h >> 29;
    return static_cast<std::size_t>(h);
  }
};

inline BinaryWord operator""_w(const char* text, std::size_t len) {
  return BinaryWord::parse(std::string_view(text, len));
}

/// Number of positions where u and v differ.
inline std::size_t hamming_distance(const BinaryWord& u, const BinaryWord& v) {
  if (u.size() != v.size()) throw std::invalid_argument("unequal lengths");
  std::size_t d = 0;
  auto a = u.blocks();
  auto b = v.blocks();
  for (std::size_t i = 0; i < a.size(); ++i) d += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
  return d;
}

/// Calls f(p) for each position where u and v differ, ascending.
template <typename F>
void for_each_difference(const BinaryWord& u, const BinaryWord& v, F&& f) {
  if (u.size() != v.size()) throw std::invalid_argument("unequal lengths");
  auto a = u.blocks();
  auto b = v.blocks();
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t x = a[i] ^ b[i];
    while (x != 0) {
      const int lead = std::countl_zero(x);
      f(i * BinaryWord::block_bits + static_cast<std::size_t>(lead));
      x &= ~(std::uint64_t{1} << (63 - lead));
    }
  }
}

/// Set of distinct words, all of one length n.
class FactorSet {
 public:
  explicit FactorSet(std::size_t n) : n_(n) {}

  [[nodiscard]] std::size_t length() const noexcept { return n_; }
  [[nodiscard]] std::size_t size() const noexcept { return words_.size(); }
  [[nodiscard]] bool empty() const noexcept { return words_.empty(); }

  bool insert(BinaryWord w) {
    if (w.size() != n_) throw std::invalid_argument("factor set: word length differs from n");
    return words_.insert(std::move(w)).second;
  }

  [[nodiscard]] bool contains(const BinaryWord& w) const { return words_.contains(w); }

  void merge(const FactorSet& other) {
    if (other.n_ != n_) throw std::invalid_argument("factor set: merging unequal lengths");
    words_.insert(other.words_.begin(), other.words_.end());
  }

  /// Members in lexicographic order.
  [[nodiscard]] std::vector<BinaryWord> sorted() const {
    std::vector<BinaryWord> out(words_.begin(), words_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  void reserve(std::size_t count) { words_.reserve(count); }

  [[nodiscard]] auto begin() const { return words_.begin(); }
  [[nodiscard]] auto end() const { return words_.end(); }

  friend bool operator==(const FactorSet& a, const FactorSet& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  [[nodiscard]] bool is_subset_of(const FactorSet& other) const {
    if (other.n_ != n_) return false;
    return std::all_of(words_.begin(), words_.end(), [&](const BinaryWord& w) { return other.contains(w); });
  }

 private:
  std::size_t n_;
  std::unordered_set<BinaryWord, BinaryWordHash> words_;
};

/// Adds the length-n windows of w starting in [first, last] to out.
inline void insert_windows(FactorSet& out, const BinaryWord& w, std::size_t first, std::size_t last) {
  const std::size_t n = out.length();
  for (std::size_t c = first; c <= last; ++c) {
    if (n <= BinaryWord::block_bits) {
      out.insert(BinaryWord::from_bits(w.window64(c, n), n));
    } else {
      out.insert(w.factor(c, n));
    }
  }
}

/// All length-n contiguous subwords of w.
inline FactorSet factors(const BinaryWord& w, std::size_t n) {
  if (n == 0) throw std::invalid_argument("factor length must be positive");
  if (n > w.size()) throw std::invalid_argument("factor length exceeds word");
  FactorSet out(n);
  insert_windows(out, w, 0, w.size() - n);
  return out;
}

/// Word list text format: one ASCII word per line, LF-terminated.
inline std::vector<BinaryWord> read_word_list(std::istream& in) {
  std::vector<BinaryWord> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') throw std::invalid_argument("word list: CR line ending");
    words.push_back(BinaryWord::parse(line));
  }
  return words;
}

inline void write_word_list(std::ostream& out, std::span<const BinaryWord> words) {
  for (const auto& w : words) out << w.str() << '\n';
}

}  // namespace hamshift
