#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "binary_word.hpp"

namespace hamshift {

/// Aho-Corasick automaton over {0,1} with a complete transition table.
///
/// Duplicate patterns share one id; `pattern_id(i)` maps the i-th input
/// pattern to it.
class PatternAutomaton {
 public:
  static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

  explicit PatternAutomaton(std::span<const BinaryWord> patterns) {
    nodes_.push_back(Node{});
    input_ids_.reserve(patterns.size());
    std::unordered_map<BinaryWord, std::uint32_t, BinaryWordHash> seen;
    for (const auto& p : patterns) {
      auto [it, fresh] = seen.emplace(p, static_cast<std::uint32_t>(distinct_.size()));
      input_ids_.push_back(it->second);
      if (!fresh) continue;
      distinct_.push_back(p);
      std::uint32_t s = 0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const int c = p[i] ? 1 : 0;
        if (nodes_[s].next[c] == npos) {
          nodes_[s].next[c] = static_cast<std::uint32_t>(nodes_.size());
          Node child;
          child.depth = nodes_[s].depth + 1;
          nodes_.push_back(child);
        }
        s = nodes_[s].next[c];
      }
      nodes_[s].terminal = it->second;
    }
    link();
  }

  [[nodiscard]] std::size_t pattern_count() const noexcept { return distinct_.size(); }
  [[nodiscard]] const BinaryWord& pattern(std::uint32_t id) const { return distinct_.at(id); }
  [[nodiscard]] std::uint32_t pattern_id(std::size_t input_index) const { return input_ids_.at(input_index); }

  /// Calls on_match(pattern_id, start) for every occurrence in text, in
  /// order of end position. on_match returns false to stop the scan.
  template <typename F>
  void scan(const BinaryWord& text, F&& on_match) const {
    std::uint32_t s = 0;
    if (!report(s, 0, on_match)) return;
    for (std::size_t p = 0; p < text.size(); ++p) {
      s = nodes_[s].next[text[p] ? 1 : 0];
      if (!report(s, p + 1, on_match)) return;
    }
  }

 private:
  struct Node {
    std::array<std::uint32_t, 2> next{npos, npos};
    std::uint32_t fail = 0;
    std::uint32_t output = npos;    // nearest proper suffix state that is terminal
    std::uint32_t terminal = npos;  // pattern id ending here
    std::uint32_t depth = 0;
  };

  void link() {
    std::deque<std::uint32_t> queue;
    for (int c = 0; c < 2; ++c) {
      auto& child = nodes_[0].next[c];
      if (child == npos) {
        child = 0;
      } else {
        nodes_[child].fail = 0;
        queue.push_back(child);
      }
    }
    while (!queue.empty()) {
      const std::uint32_t s = queue.front();
      queue.pop_front();
      const std::uint32_t f = nodes_[s].fail;
      nodes_[s].output = nodes_[f].terminal != npos ? f : nodes_[f].output;
      for (int c = 0; c < 2; ++c) {
        const std::uint32_t child = nodes_[s].next[c];
        if (child == npos) {
          nodes_[s].next[c] = nodes_[f].next[c];
        } else {
          nodes_[child].fail = nodes_[f].next[c];
          queue.push_back(child);
        }
      }
    }
    // the empty pattern sits on the root; make it visible from every state
    if (nodes_[0].terminal != npos) {
      for (std::size_t s = 1; s < nodes_.size(); ++s) {
        if (nodes_[s].output == npos) nodes_[s].output = 0;
      }
    }
  }

  template <typename F>
  bool report(std::uint32_t s, std::size_t end, F& on_match) const {
    for (std::uint32_t t = nodes_[s].terminal != npos ? s : nodes_[s].output; t != npos;
         t = t == 0 ? npos : nodes_[t].output) {
      if (!on_match(nodes_[t].terminal, end - nodes_[t].depth)) return false;
    }
    return true;
  }

  std::vector<Node> nodes_;
  std::vector<BinaryWord> distinct_;
  std::vector<std::uint32_t> input_ids_;
};

struct ContainmentResult {
  bool all = false;
  std::vector<BinaryWord> missing;  // in input order
};

/// Whether every pattern occurs in text, via one pass of `automaton`.
inline ContainmentResult contains_all(const BinaryWord& text, const PatternAutomaton& automaton) {
  std::vector<char> found(automaton.pattern_count(), 0);
  std::size_t remaining = found.size();
  automaton.scan(text, [&](std::uint32_t id, std::size_t) {
    if (!found[id]) {
      found[id] = 1;
      --remaining;
    }
    return remaining != 0;
  });
  ContainmentResult r;
  r.all = remaining == 0;
  for (std::uint32_t id = 0; id < found.size(); ++id) {
    if (!found[id]) r.missing.push_back(automaton.pattern(id));
  }
  return r;
}

inline ContainmentResult contains_all(const BinaryWord& text, std::span<const BinaryWord> patterns) {
  return contains_all(text, PatternAutomaton(patterns));
}

/// Occurrence count of every distinct pattern, indexed by pattern id.
inline std::vector<std::size_t> count_occurrences(const BinaryWord& text, const PatternAutomaton& automaton) {
  std::vector<std::size_t> counts(automaton.pattern_count(), 0);
  automaton.scan(text, [&](std::uint32_t id, std::size_t) {
    ++counts[id];
    return true;
  });
  return counts;
}

/// Start positions of every (possibly overlapping) occurrence, ascending.
inline std::vector<std::size_t> occurrence_positions(const BinaryWord& text, const BinaryWord& pattern) {
  std::vector<std::size_t> out;
  if (pattern.size() > text.size()) return out;
  const BinaryWord one[] = {pattern};
  PatternAutomaton automaton(one);
  automaton.scan(text, [&](std::uint32_t, std::size_t start) {
    out.push_back(start);
    return true;
  });
  return out;
}

}  // namespace hamshift
