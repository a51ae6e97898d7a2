#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "binary_word.hpp"

namespace hamshift {

using BigInt = boost::multiprecision::cpp_int;

/// One step of a rewrite schedule: set `position` to `symbol`.
struct Flip {
  std::size_t position = 0;
  bool symbol = false;
  friend bool operator==(const Flip&, const Flip&) = default;
};

/// Step j turns words[j] into words[j+1].
using RewriteSchedule = std::vector<Flip>;

/// Block indices h_0 ... h_{k-1} into the previous level's family.
using IndexSequence = std::vector<std::uint32_t>;

/// A block of a decomposition: a previous-level word placed at `start`.
struct BlockRef {
  std::uint32_t start = 0;
  std::uint32_t index = 0;
  friend bool operator==(const BlockRef&, const BlockRef&) = default;
};

/// Block decompositions of a sequence of words, stored as per-word deltas
/// against the previous word's decomposition.
class BlockRecord {
 public:
  [[nodiscard]] std::size_t size() const noexcept { return counts_.size(); }
  [[nodiscard]] bool empty() const noexcept { return counts_.empty(); }

  void push(std::span<const BlockRef> blocks) {
    offsets_.push_back(deltas_.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (i >= last_.size() || last_[i] != blocks[i])
        deltas_.push_back(Delta{static_cast<std::uint32_t>(i), blocks[i]});
    }
    last_.assign(blocks.begin(), blocks.end());
    counts_.push_back(static_cast<std::uint32_t>(blocks.size()));
  }

  /// Calls f(j, blocks_of_word_j) for every recorded word in order.
  template <typename F>
  void for_each(F&& f) const {
    std::vector<BlockRef> cur;
    for (std::size_t j = 0; j < counts_.size(); ++j) {
      apply(j, cur);
      f(j, std::span<const BlockRef>(cur));
    }
  }

  [[nodiscard]] std::vector<BlockRef> at(std::size_t j) const {
    if (j >= counts_.size()) throw std::out_of_range("block record: word index out of range");
    std::vector<BlockRef> cur;
    for (std::size_t t = 0; t <= j; ++t) apply(t, cur);
    return cur;
  }

 private:
  struct Delta {
    std::uint32_t slot;
    BlockRef ref;
  };

  void apply(std::size_t j, std::vector<BlockRef>& cur) const {
    cur.resize(counts_[j]);
    const std::size_t end = j + 1 < offsets_.size() ? offsets_[j + 1] : deltas_.size();
    for (std::size_t d = offsets_[j]; d < end; ++d) cur[deltas_[d].slot] = deltas_[d].ref;
  }

  std::vector<BlockRef> last_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::size_t> offsets_;
  std::vector<Delta> deltas_;
};

/// One stage W_i of the construction.
struct Level {
  std::size_t index = 0;
  std::size_t word_length = 0;
  /// u-block count used to build this level from the previous one.
  std::optional<std::size_t> block_count;
  std::optional<IndexSequence> sequence;
  /// False once any level below was built with relaxed genericity.
  bool faithful = true;
  std::vector<BinaryWord> words;
  RewriteSchedule schedule;
  /// Decomposition of every word into previous-level blocks (empty at level 0).
  BlockRecord blocks;

  [[nodiscard]] std::size_t size() const noexcept { return words.size(); }
};

enum class GenericityMode {
  twice,  // every ordered pair at two positions at least 2 apart
  once,   // every ordered pair at least once; breaks the minimality argument
};

class GenericityViolated : public std::invalid_argument {
 public:
  GenericityViolated() : std::invalid_argument("genericity violated") {}
};

class InfeasibleLevel : public std::runtime_error {
 public:
  InfeasibleLevel(std::size_t depth, std::string projected_length)
      : std::runtime_error("level size infeasible: depth " + std::to_string(depth) +
                           " has projected word length " + projected_length),
        depth_(depth),
        projected_length_(std::move(projected_length)) {}

  [[nodiscard]] std::size_t depth() const noexcept { return depth_; }
  [[nodiscard]] const std::string& projected_length() const noexcept { return projected_length_; }

 private:
  std::size_t depth_;
  std::string projected_length_;
};

struct GenericityReport {
  bool generic = false;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> violations;  // lexicographic
};

/// Checks that every ordered pair (j, j') in [0,n)^2 occurs as consecutive
/// entries of h, at two positions at least 2 apart in `twice` mode.
inline GenericityReport is_generic(std::span<const std::uint32_t> h, std::size_t n,
                                   GenericityMode mode = GenericityMode::twice) {
  for (auto v : h) {
    if (v >= n) throw std::invalid_argument("index sequence value out of range");
  }
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> first(n * n, none);
  std::vector<std::size_t> last(n * n, none);
  for (std::size_t p = 0; p + 1 < h.size(); ++p) {
    const std::size_t pair = std::size_t{h[p]} * n + h[p + 1];
    if (first[pair] == none) first[pair] = p;
    last[pair] = p;
  }
  GenericityReport r;
  for (std::size_t pair = 0; pair < n * n; ++pair) {
    const bool ok = mode == GenericityMode::once ? first[pair] != none
                                                 : first[pair] != none && last[pair] - first[pair] >= 2;
    if (!ok) r.violations.emplace_back(static_cast<std::uint32_t>(pair / n), static_cast<std::uint32_t>(pair % n));
  }
  r.generic = r.violations.empty();
  return r;
}

/// Lexicographically least de Bruijn cycle of order 2 over [0, n): the
/// concatenation, in lexicographic order, of the Lyndon words of length 1
/// and 2 (a, then ab for b > a). Starts with (0, 0).
inline IndexSequence de_bruijn_order2(std::uint32_t n) {
  IndexSequence out;
  out.reserve(std::size_t{n} * n);
  for (std::uint32_t a = 0; a < n; ++a) {
    out.push_back(a);
    for (std::uint32_t b = a + 1; b < n; ++b) {
      out.push_back(a);
      out.push_back(b);
    }
  }
  return out;
}

/// The de Bruijn cycle traversed twice plus its first symbol again
/// (k = 2n^2 + 1); in `once` mode traversed once plus the closing symbol
/// (k = n^2 + 1).
inline IndexSequence default_index_sequence(std::size_t n, GenericityMode mode = GenericityMode::twice) {
  if (n == 0) throw std::invalid_argument("index sequence alphabet must be nonempty");
  const IndexSequence cycle = de_bruijn_order2(static_cast<std::uint32_t>(n));
  IndexSequence out = cycle;
  if (mode == GenericityMode::twice) out.insert(out.end(), cycle.begin(), cycle.end());
  out.push_back(cycle.front());
  return out;
}

/// The unique position where words[0]·0 and 0·words.back() differ, if there
/// is exactly one.
inline std::optional<std::size_t> wrap_position(const Level& level) {
  if (level.words.empty()) return std::nullopt;
  BinaryWord a = level.words.front();
  a.push_back(false);
  BinaryWord b(1);
  b.append(level.words.back());
  std::optional<std::size_t> pos;
  std::size_t count = 0;
  for_each_difference(a, b, [&](std::size_t p) {
    if (count++ == 0) pos = p;
  });
  if (count != 1) return std::nullopt;
  return pos;
}

/// W_0 = (01, 11).
inline Level initial_level() {
  Level level;
  level.index = 0;
  level.word_length = 2;
  level.words = {BinaryWord::parse("01"), BinaryWord::parse("11")};
  level.schedule = {Flip{0, true}};
  return level;
}

/// Builds level i+1 from level i and the block indices of u.
///
/// words[0] = w_0 · 0 · u · w_0. The schedule then rotates each u-block in
/// turn around the previous family, which moves the free zero one block to
/// the right; rewrites the prefix w_0 into w_{n-1}; and finally rotates the
/// suffix 0·w_0 into w_0·0. The last word is w_{n-1} · u · w_0 · 0.
inline Level build_next_level(const Level& prev, const IndexSequence& h,
                              GenericityMode mode = GenericityMode::twice) {
  const std::size_t n = prev.size();
  const std::size_t ell = prev.word_length;
  const std::size_t k = h.size();
  if (!is_generic(h, n, mode).generic) throw GenericityViolated();
  if (prev.schedule.size() + 1 != n) throw std::invalid_argument("previous level has an incomplete schedule");
  const auto q = wrap_position(prev);
  if (!q) throw std::invalid_argument("previous level violates the wraparound property");

  const std::size_t next_length = (k + 2) * ell + 1;
  if (next_length > std::size_t{1} << 32 || n * (k + 2) > std::size_t{1} << 32) {
    throw InfeasibleLevel(prev.index + 1, std::to_string(next_length));
  }

  Level next;
  next.index = prev.index + 1;
  next.word_length = next_length;
  next.block_count = k;
  next.sequence = h;
  next.faithful = prev.faithful && mode == GenericityMode::twice;

  BinaryWord cur = prev.words.front();
  cur.push_back(false);
  for (auto j : h) cur.append(prev.words[j]);
  cur.append(prev.words.front());

  std::vector<BlockRef> blocks;
  blocks.reserve(k + 2);
  blocks.push_back(BlockRef{0, 0});
  for (std::size_t b = 0; b < k; ++b)
    blocks.push_back(BlockRef{static_cast<std::uint32_t>(ell + 1 + b * ell), h[b]});
  blocks.push_back(BlockRef{static_cast<std::uint32_t>(ell + 1 + k * ell), 0});

  next.words.reserve(n * (k + 2));
  next.schedule.reserve(n * (k + 2) - 1);
  next.words.push_back(cur);
  next.blocks.push(blocks);

  auto step = [&](std::size_t pos, bool symbol, std::size_t slot, BlockRef ref) {
    if (cur[pos] == symbol) throw std::logic_error("rewrite step does not change the word");
    cur.set(pos, symbol);
    next.schedule.push_back(Flip{pos, symbol});
    next.words.push_back(cur);
    blocks[slot] = ref;
    next.blocks.push(blocks);
  };

  // Cycles the block in `slot` (preceded by a zero) through w_{index} ... w_{n-1},
  // moves it one symbol left via the wraparound flip, then back up to w_{target}.
  const bool wrap_symbol = *q < ell ? prev.words.front()[*q] : false;
  auto rotate = [&](std::size_t slot, std::uint32_t target) {
    const BlockRef ref = blocks[slot];
    for (std::uint32_t t = ref.index; t + 1 < n; ++t) {
      const Flip& f = prev.schedule[t];
      step(ref.start + f.position, f.symbol, slot, BlockRef{ref.start, t + 1});
    }
    const std::uint32_t left = ref.start - 1;
    step(left + *q, wrap_symbol, slot, BlockRef{left, 0});
    for (std::uint32_t t = 0; t < target; ++t) {
      const Flip& f = prev.schedule[t];
      step(left + f.position, f.symbol, slot, BlockRef{left, t + 1});
    }
  };

  for (std::size_t b = 0; b < k; ++b) rotate(b + 1, h[b]);
  for (std::uint32_t t = 0; t + 1 < n; ++t) {
    const Flip& f = prev.schedule[t];
    step(f.position, f.symbol, 0, BlockRef{0, t + 1});
  }
  rotate(k + 1, 0);
  return next;
}

/// First violated structural invariant of a built level, if any: sizes,
/// distinctness, chain adjacency, wraparound, schedule replay, and the size
/// recurrences against `prev`.
inline std::optional<std::string> level_invariant_violation(const Level& level, const Level* prev = nullptr) {
  if (level.words.empty()) return "level has no words";
  for (std::size_t j = 0; j < level.size(); ++j) {
    if (level.words[j].size() != level.word_length) return "word " + std::to_string(j) + " has wrong length";
  }
  {
    std::unordered_set<BinaryWord, BinaryWordHash> seen(level.words.begin(), level.words.end());
    if (seen.size() != level.size()) return "words are not distinct";
  }
  for (std::size_t j = 0; j + 1 < level.size(); ++j) {
    if (hamming_distance(level.words[j], level.words[j + 1]) != 1)
      return "chain adjacency fails at j=" + std::to_string(j);
  }
  if (!wrap_position(level)) return "wraparound distance is not 1";
  if (level.schedule.size() + 1 != level.size()) return "schedule length is not n-1";
  {
    BinaryWord cur = level.words.front();
    for (std::size_t j = 0; j < level.schedule.size(); ++j) {
      const Flip& f = level.schedule[j];
      if (f.position >= cur.size() || cur[f.position] == f.symbol)
        return "schedule step " + std::to_string(j) + " is not a flip";
      cur.set(f.position, f.symbol);
      if (cur != level.words[j + 1]) return "schedule replay diverges at step " + std::to_string(j);
    }
  }
  if (prev != nullptr) {
    if (level.index != prev->index + 1) return "level index is not consecutive";
    if (!level.block_count) return "missing block count";
    const std::size_t k = *level.block_count;
    if (level.word_length != (k + 2) * prev->word_length + 1) return "word length recurrence fails";
    if (level.size() != prev->size() * (k + 2)) return "family size recurrence fails";
  }
  return std::nullopt;
}

/// Projected (n, ell, k) of levels 0 ... depth under default index sequences.
struct LevelShape {
  BigInt n;
  BigInt word_length;
  BigInt block_count;  // zero at level 0
};

inline std::vector<LevelShape> projected_shapes(std::size_t depth, GenericityMode mode = GenericityMode::twice) {
  std::vector<LevelShape> out;
  out.push_back(LevelShape{2, 2, 0});
  for (std::size_t i = 0; i < depth; ++i) {
    const LevelShape& s = out.back();
    const BigInt square = s.n * s.n;
    const BigInt k = (mode == GenericityMode::twice ? 2 * square : square) + 1;
    out.push_back(LevelShape{s.n * (k + 2), (k + 2) * s.word_length + 1, k});
  }
  return out;
}

struct TowerOptions {
  std::size_t max_depth = 2;
  GenericityMode mode = GenericityMode::twice;
};

/// Levels 0 ... depth with default index sequences, each validated.
inline std::vector<Level> build_tower(std::size_t depth, const TowerOptions& options = {}) {
  if (depth > options.max_depth) {
    throw InfeasibleLevel(depth, projected_shapes(depth, options.mode).back().word_length.str());
  }
  std::vector<Level> tower;
  tower.reserve(depth + 1);
  tower.push_back(initial_level());
  for (std::size_t i = 0; i < depth; ++i) {
    const Level& prev = tower.back();
    Level next = build_next_level(prev, default_index_sequence(prev.size(), options.mode), options.mode);
    if (auto bad = level_invariant_violation(next, &prev)) throw std::logic_error("built level " + std::to_string(next.index) + ": " + *bad);
    tower.push_back(std::move(next));
  }
  if (auto bad = level_invariant_violation(tower.front())) throw std::logic_error("level 0: " + *bad);
  return tower;
}

}  // namespace hamshift
