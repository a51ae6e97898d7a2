#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "binary_word.hpp"
#include "construction.hpp"
#include "parallel.hpp"
#include "pattern_matching.hpp"

namespace hamshift {

/// Parse of a word as W_i-blocks separated by zero gaps, plus a trailing
/// run of at most one zero.
struct GapDecomposition {
  std::size_t base_level = 0;
  std::vector<std::uint32_t> blocks;
  std::vector<std::size_t> gaps;  // gaps[b] sits between blocks[b] and blocks[b+1]
  std::size_t trailing_gap = 0;

  [[nodiscard]] std::size_t max_gap() const {
    return gaps.empty() ? 0 : *std::max_element(gaps.begin(), gaps.end());
  }
  friend bool operator==(const GapDecomposition&, const GapDecomposition&) = default;
};

inline BinaryWord reassemble(const GapDecomposition& d, const Level& base) {
  BinaryWord out;
  for (std::size_t b = 0; b < d.blocks.size(); ++b) {
    if (b > 0) {
      for (std::size_t z = 0; z < d.gaps[b - 1]; ++z) out.push_back(false);
    }
    out.append(base.words.at(d.blocks[b]));
  }
  for (std::size_t z = 0; z < d.trailing_gap; ++z) out.push_back(false);
  return out;
}

/// Decomposition carried by the construction records for one word.
inline GapDecomposition decomposition_from_blocks(std::span<const BlockRef> blocks, std::size_t base_level,
                                                  std::size_t base_length, std::size_t word_length) {
  GapDecomposition d;
  d.base_level = base_level;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    d.blocks.push_back(blocks[b].index);
    if (b > 0) {
      const std::size_t prev_end = blocks[b - 1].start + base_length;
      if (blocks[b].start < prev_end) throw std::invalid_argument("recorded blocks overlap");
      d.gaps.push_back(blocks[b].start - prev_end);
    }
  }
  if (!blocks.empty()) {
    const std::size_t end = blocks.back().start + base_length;
    if (end > word_length) throw std::invalid_argument("recorded block exceeds the word");
    d.trailing_gap = word_length - end;
  }
  return d;
}

/// Backtracking parser for L_{i,k,g} · {ε, 0} over a fixed base family.
///
/// Preference order: a block at the current position, then gaps of
/// increasing length, then the trailing zero. Failed positions are memoized,
/// so the search is linear in the word length.
class GapParser {
 public:
  explicit GapParser(const Level& base) : base_(base), ell_(base.word_length) {
    if (ell_ == 0) throw std::invalid_argument("base level has empty words");
    for (std::uint32_t j = 0; j < base.size(); ++j) {
      if (ell_ <= BinaryWord::block_bits) {
        small_.emplace(base.words[j].window64(0, ell_), j);
      } else {
        large_.emplace(base.words[j], j);
      }
    }
  }

  [[nodiscard]] std::optional<GapDecomposition> parse(const BinaryWord& w, std::size_t max_gap,
                                                      bool allow_trailing_zero) const {
    if (max_gap > 2) throw std::invalid_argument("max_gap must be at most 2");
    const std::size_t len = w.size();
    GapDecomposition d;
    d.base_level = base_.index;

    const auto first = match(w, 0);
    if (!first) return std::nullopt;
    d.blocks.push_back(*first);

    struct Frame {
      std::size_t pos;  // just past a block
      std::size_t next;
    };
    std::vector<char> dead(len + 1, 0);
    std::vector<Frame> stack{{ell_, 0}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.pos == len) {
        d.trailing_gap = 0;
        return d;
      }
      if (f.next <= max_gap) {
        const std::size_t a = f.next++;
        if (a > 0 && (f.pos + a > len || w[f.pos + a - 1])) {
          f.next = max_gap + 1;  // a one ends every longer gap too
          continue;
        }
        const std::size_t q = f.pos + a;
        if (q + ell_ > len || dead[q + ell_]) continue;
        if (const auto idx = match(w, q)) {
          d.gaps.push_back(a);
          d.blocks.push_back(*idx);
          stack.push_back(Frame{q + ell_, 0});
        }
        continue;
      }
      if (f.next == max_gap + 1) {
        ++f.next;
        if (allow_trailing_zero && f.pos + 1 == len && !w[f.pos]) {
          d.trailing_gap = 1;
          return d;
        }
        continue;
      }
      dead[f.pos] = 1;
      stack.pop_back();
      d.blocks.pop_back();
      if (!d.gaps.empty()) d.gaps.pop_back();
    }
    return std::nullopt;
  }

 private:
  [[nodiscard]] std::optional<std::uint32_t> match(const BinaryWord& w, std::size_t q) const {
    if (q + ell_ > w.size()) return std::nullopt;
    if (ell_ <= BinaryWord::block_bits) {
      auto it = small_.find(w.window64(q, ell_));
      if (it == small_.end()) return std::nullopt;
      return it->second;
    }
    auto it = large_.find(w.factor(q, ell_));
    if (it == large_.end()) return std::nullopt;
    return it->second;
  }

  const Level& base_;
  std::size_t ell_;
  std::unordered_map<std::uint64_t, std::uint32_t> small_;
  std::unordered_map<BinaryWord, std::uint32_t, BinaryWordHash> large_;
};

inline std::optional<GapDecomposition> parse_gap_language(const BinaryWord& w, const Level& base,
                                                          std::size_t max_gap, bool allow_trailing_zero) {
  return GapParser(base).parse(w, max_gap, allow_trailing_zero);
}

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;  // empty on pass
};

struct VerificationReport {
  std::size_t level = 0;
  std::vector<Check> checks;
  std::map<std::string, double> timings_ms;

  [[nodiscard]] bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  [[nodiscard]] const Check* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
  void append(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    for (const auto& [k, v] : other.timings_ms) timings_ms[k] += v;
  }
};

inline nlohmann::ordered_json to_json(const VerificationReport& r, bool with_timings = true) {
  nlohmann::ordered_json j;
  j["level"] = r.level;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  }
  if (with_timings) {
    j["timings_ms"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.timings_ms) j["timings_ms"][k] = v;
  }
  return j;
}

struct VerifyOptions {
  /// Containment is checked on this many words (always including the first
  /// and last); nullopt checks every word.
  std::optional<std::size_t> containment_sample;
  std::uint64_t sample_seed = 0x5eed;
};

namespace detail {

class Stopwatch {
 public:
  [[nodiscard]] double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Runs `probe(j)` for every j (in parallel) and returns the smallest j with
/// a nonempty witness, if any.
template <typename F>
std::optional<std::pair<std::size_t, std::string>> first_failure(std::span<const std::size_t> items, F&& probe) {
  std::vector<std::string> witness(items.size());
  parallel_for(items.size(), [&](std::size_t t) { witness[t] = probe(items[t]); });
  for (std::size_t t = 0; t < items.size(); ++t) {
    if (!witness[t].empty()) return std::make_pair(items[t], witness[t]);
  }
  return std::nullopt;
}

inline std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = j;
  return v;
}

inline std::vector<std::size_t> sample_indices(std::size_t n, std::optional<std::size_t> sample, std::uint64_t seed) {
  if (!sample || *sample >= n) return all_indices(n);
  std::vector<std::size_t> v = all_indices(n);
  std::vector<std::size_t> out;
  if (*sample >= 1) out.push_back(0);
  if (*sample >= 2) out.push_back(n - 1);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> middle(v.begin() + 1, v.end() - 1);
  std::shuffle(middle.begin(), middle.end(), rng);
  for (std::size_t t = 0; out.size() < *sample; ++t) out.push_back(middle[t]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// H(words[j], words[j+1]) = 1 for all j.
inline Check check_chain_adjacency(const Level& level) {
  Check c{"chain_adjacency", true, {}};
  for (std::size_t j = 0; j + 1 < level.size(); ++j) {
    const std::size_t d = hamming_distance(level.words[j], level.words[j + 1]);
    if (d != 1) {
      c.pass = false;
      c.witness = "j=" + std::to_string(j) + " distance=" + std::to_string(d);
      break;
    }
  }
  return c;
}

/// H(words[0]·0, 0·words[n-1]) = 1.
inline Check check_wraparound(const Level& level) {
  Check c{"wraparound", true, {}};
  BinaryWord a = level.words.front();
  a.push_back(false);
  BinaryWord b(1);
  b.append(level.words.back());
  const std::size_t d = hamming_distance(a, b);
  if (d != 1) {
    c.pass = false;
    c.witness = "distance=" + std::to_string(d);
  }
  return c;
}

/// All concatenations prev.words[a] · prev.words[b], a-major.
inline std::vector<BinaryWord> pair_concatenations(const Level& prev) {
  std::vector<BinaryWord> out;
  out.reserve(prev.size() * prev.size());
  for (const auto& a : prev.words) {
    for (const auto& b : prev.words) out.push_back(a + b);
  }
  return out;
}

/// Every word of L_{i-1,2,0} = W_{i-1}^2 occurs in every checked word.
inline Check check_containment(const Level& level, const Level& prev, const VerifyOptions& options = {}) {
  Check c{"containment", true, {}};
  const auto patterns = pair_concatenations(prev);
  const PatternAutomaton automaton(patterns);
  const auto items = detail::sample_indices(level.size(), options.containment_sample, options.sample_seed);
  const auto bad = detail::first_failure(items, [&](std::size_t j) -> std::string {
    auto r = contains_all(level.words[j], automaton);
    if (r.all) return {};
    return "missing " + r.missing.front().str() + " (" + std::to_string(r.missing.size()) + " missing)";
  });
  if (bad) {
    c.pass = false;
    c.witness = "word=" + std::to_string(bad->first) + " " + bad->second;
  }
  return c;
}

/// Every word lies in L_{i-1,k,1} · {ε, 0} for one k; words[0] has no
/// trailing zero.
inline Check check_gap_language(const Level& level, const Level& prev) {
  Check c{"gap_language", true, {}};
  const GapParser parser(prev);
  std::vector<std::size_t> counts(level.size(), 0);
  const auto items = detail::all_indices(level.size());
  const auto bad = detail::first_failure(items, [&](std::size_t j) -> std::string {
    auto d = parser.parse(level.words[j], 1, j != 0);
    if (!d) return "no parse";
    counts[j] = d->blocks.size();
    return {};
  });
  if (bad) {
    c.pass = false;
    c.witness = "word=" + std::to_string(bad->first) + " " + bad->second;
    return c;
  }
  for (std::size_t j = 1; j < level.size(); ++j) {
    if (counts[j] != counts[0]) {
      c.pass = false;
      c.witness = "word=" + std::to_string(j) + " blocks=" + std::to_string(counts[j]) +
                  " expected=" + std::to_string(counts[0]);
      break;
    }
  }
  return c;
}

/// The four inductive properties of `level` relative to `prev`.
inline VerificationReport verify_level(const Level& level, const Level& prev, const VerifyOptions& options = {}) {
  if (level.index != prev.index + 1) throw std::invalid_argument("verify_level: level must directly follow prev");
  VerificationReport r;
  r.level = level.index;
  auto timed = [&](const char* name, auto&& fn) {
    detail::Stopwatch sw;
    r.checks.push_back(fn());
    r.timings_ms[name] = sw.ms();
  };
  timed("chain_adjacency", [&] { return check_chain_adjacency(level); });
  timed("wraparound", [&] { return check_wraparound(level); });
  timed("containment", [&] { return check_containment(level, prev, options); });
  timed("gap_language", [&] { return check_gap_language(level, prev); });
  return r;
}

/// Chain and wraparound only; what a level without predecessor can check.
inline VerificationReport verify_base_level(const Level& level) {
  VerificationReport r;
  r.level = level.index;
  r.checks.push_back(check_chain_adjacency(level));
  r.checks.push_back(check_wraparound(level));
  return r;
}

/// The stored certificates: the schedule replays the word list, and the
/// recorded decompositions reassemble every word with gaps at most 1.
inline VerificationReport verify_records(const Level& level, const Level* prev) {
  VerificationReport r;
  r.level = level.index;
  detail::Stopwatch sw;
  Check replay{"schedule_replay", true, {}};
  if (level.schedule.size() + 1 != level.size()) {
    replay.pass = false;
    replay.witness = "schedule length " + std::to_string(level.schedule.size());
  } else {
    BinaryWord cur = level.words.front();
    for (std::size_t j = 0; j < level.schedule.size(); ++j) {
      const Flip& f = level.schedule[j];
      if (f.position >= cur.size() || cur[f.position] == f.symbol) {
        replay.pass = false;
        replay.witness = "step=" + std::to_string(j) + " is not a flip";
        break;
      }
      cur.set(f.position, f.symbol);
      if (cur != level.words[j + 1]) {
        replay.pass = false;
        replay.witness = "step=" + std::to_string(j) + " word=" + std::to_string(j + 1);
        break;
      }
    }
  }
  r.checks.push_back(replay);
  r.timings_ms["schedule_replay"] = sw.ms();

  if (prev != nullptr) {
    detail::Stopwatch sw2;
    Check recorded{"recorded_decomposition", true, {}};
    if (level.blocks.size() != level.size()) {
      recorded.pass = false;
      recorded.witness = "records for " + std::to_string(level.blocks.size()) + " words";
    } else {
      level.blocks.for_each([&](std::size_t j, std::span<const BlockRef> blocks) {
        if (!recorded.pass) return;
        std::string why;
        try {
          for (const auto& b : blocks) {
            if (b.index >= prev->size()) throw std::invalid_argument("block index out of range");
          }
          auto d = decomposition_from_blocks(blocks, prev->index, prev->word_length, level.word_length);
          if (d.max_gap() > 1 || d.trailing_gap > 1) why = "gap exceeds 1";
          else if (j == 0 && d.trailing_gap != 0) why = "first word has a trailing gap";
          else if (reassemble(d, *prev) != level.words[j]) why = "does not reassemble";
        } catch (const std::invalid_argument& e) {
          why = e.what();
        }
        if (!why.empty()) {
          recorded.pass = false;
          recorded.witness = "word=" + std::to_string(j) + " " + why;
        }
      });
    }
    r.checks.push_back(recorded);
    r.timings_ms["recorded_decomposition"] = sw2.ms();
  }
  return r;
}

inline const Level& find_level(std::span<const Level> tower, std::size_t index) {
  for (const auto& l : tower) {
    if (l.index == index) return l;
  }
  throw std::invalid_argument("level " + std::to_string(index) + " is not in the tower");
}

/// W_m ⊂ L_{i,k,2} · {ε, 0} with one k, no gap 000, and w_{m,0} without a
/// trailing zero. For m = i + 1 the stronger gap bound 1 is parsed.
inline VerificationReport verify_property_A(std::span<const Level> tower, std::size_t m, std::size_t i) {
  if (i + 1 > m) throw std::invalid_argument("property A needs i + 1 <= m");
  const Level& deep = find_level(tower, m);
  const Level& base = find_level(tower, i);
  const std::size_t max_gap = m == i + 1 ? 1 : 2;
  VerificationReport r;
  r.level = m;
  detail::Stopwatch sw;
  const std::string tag = "(" + std::to_string(m) + "," + std::to_string(i) + ")";

  const GapParser parser(base);
  std::vector<std::optional<GapDecomposition>> parses(deep.size());
  parallel_for(deep.size(), [&](std::size_t j) { parses[j] = parser.parse(deep.words[j], max_gap, true); });

  Check parse{"property_A_parse" + tag, true, {}};
  Check triple{"no_triple_zero_gap" + tag, true, {}};
  Check uniform{"uniform_block_count" + tag, true, {}};
  Check first{"first_word_no_trailing_gap" + tag, true, {}};
  for (std::size_t j = 0; j < deep.size(); ++j) {
    if (!parses[j]) {
      parse.pass = false;
      parse.witness = "word=" + std::to_string(j) + " no parse with gaps <= " + std::to_string(max_gap);
      break;
    }
  }
  if (parse.pass) {
    // The parser never emits a gap above max_gap; scan the raw spans between
    // blocks to show no 000 run sits there either.
    for (std::size_t j = 0; j < deep.size() && triple.pass; ++j) {
      const auto& d = *parses[j];
      std::size_t pos = base.word_length;
      for (std::size_t b = 0; b < d.gaps.size(); ++b) {
        std::size_t run = 0;
        for (std::size_t p = pos; p < pos + d.gaps[b]; ++p) run = deep.words[j][p] ? 0 : run + 1;
        if (run >= 3) {
          triple.pass = false;
          triple.witness = "word=" + std::to_string(j) + " gap=" + std::to_string(b);
          break;
        }
        pos += d.gaps[b] + base.word_length;
      }
    }
    const std::size_t k = parses[0]->blocks.size();
    for (std::size_t j = 1; j < deep.size(); ++j) {
      if (parses[j]->blocks.size() != k) {
        uniform.pass = false;
        uniform.witness = "word=" + std::to_string(j) + " blocks=" + std::to_string(parses[j]->blocks.size()) +
                          " expected=" + std::to_string(k);
        break;
      }
    }
    if (parses[0]->trailing_gap != 0) {
      first.pass = false;
      first.witness = "word=0 trailing=" + std::to_string(parses[0]->trailing_gap);
    }
  } else {
    triple.pass = uniform.pass = first.pass = false;
    triple.witness = uniform.witness = first.witness = "no parse";
  }
  r.checks = {parse, triple, uniform, first};
  r.timings_ms["property_A" + tag] = sw.ms();
  return r;
}

/// Smallest R such that every length-R window of text contains pattern;
/// nullopt (infinite) when the pattern does not occur.
inline std::optional<std::size_t> recurrence_radius(const BinaryWord& pattern, const BinaryWord& text) {
  if (pattern.size() > text.size()) return std::nullopt;
  const auto occ = occurrence_positions(text, pattern);
  if (occ.empty()) return std::nullopt;
  const std::size_t p = pattern.size();
  std::size_t r = occ.front() + p;
  for (std::size_t t = 1; t < occ.size(); ++t) r = std::max(r, occ[t] - occ[t - 1] - 1 + p);
  r = std::max(r, text.size() - occ.back());
  return r;
}

/// Length-n factors of every word of `level`. Consecutive words differ in
/// few positions, so only the windows covering a difference are added after
/// the first word.
inline FactorSet level_factors(const Level& level, std::size_t n) {
  FactorSet out(n);
  if (level.words.empty() || n > level.word_length) return out;
  const std::size_t last_start = level.word_length - n;
  insert_windows(out, level.words.front(), 0, last_start);
  for (std::size_t j = 1; j < level.size(); ++j) {
    std::size_t covered = 0;  // first start not yet inserted for this word
    for_each_difference(level.words[j - 1], level.words[j], [&](std::size_t p) {
      const std::size_t lo = std::max(covered, p + 1 >= n ? p + 1 - n : 0);
      const std::size_t hi = std::min(p, last_start);
      if (lo <= hi) {
        insert_windows(out, level.words[j], lo, hi);
        covered = hi + 1;
      }
    });
  }
  return out;
}

struct FactorLanguage {
  FactorSet factors;
  /// Whether the deepest level adds nothing over the one below it; nullopt
  /// when the level below is too short (or absent).
  std::optional<bool> stabilized;
};

/// Finite under-approximation of L_n(X): the length-n factors of the
/// deepest level of the tower.
inline FactorLanguage factor_language(std::span<const Level> tower, std::size_t n) {
  if (tower.empty()) throw std::invalid_argument("factor_language: empty tower");
  if (n == 0) throw std::invalid_argument("factor length must be positive");
  const Level* deepest = &tower.front();
  for (const auto& l : tower) {
    if (l.index > deepest->index) deepest = &l;
  }
  if (n > deepest->word_length) throw std::invalid_argument("factor length exceeds word");
  FactorLanguage out{level_factors(*deepest, n), std::nullopt};
  for (const auto& l : tower) {
    if (l.index + 1 == deepest->index && n <= l.word_length) out.stabilized = level_factors(l, n) == out.factors;
  }
  return out;
}

}  // namespace hamshift
