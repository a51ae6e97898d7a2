#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "binary_word.hpp"
#include "construction.hpp"

namespace hamshift {

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Width of the smallest contiguous block containing every position where
/// u and v differ; 0 when equal.
inline std::size_t change_width(const BinaryWord& u, const BinaryWord& v) {
  std::optional<std::size_t> first;
  std::size_t last = 0;
  for_each_difference(u, v, [&](std::size_t p) {
    if (!first) first = p;
    last = p;
  });
  return first ? last - *first + 1 : 0;
}

/// k-change graph: u ~ v when they differ inside one contiguous block of
/// width at most k. Nodes are sorted lexicographically, so node order is
/// word order.
struct ChangeGraph {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<BinaryWord> nodes;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // sorted, first < second
  std::vector<std::vector<std::uint32_t>> adjacency;            // sorted

  [[nodiscard]] std::optional<std::uint32_t> index_of(const BinaryWord& w) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), w);
    if (it == nodes.end() || *it != w) return std::nullopt;
    return static_cast<std::uint32_t>(it - nodes.begin());
  }
};

namespace detail {

template <typename Key, typename KeyOf>
void bucket_edges(std::size_t node_count, std::size_t windows, KeyOf&& key_of,
                  std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::vector<std::pair<Key, std::uint32_t>> bucket(node_count);
  for (std::size_t p = 0; p < windows; ++p) {
    for (std::uint32_t v = 0; v < node_count; ++v) bucket[v] = {key_of(v, p), v};
    std::sort(bucket.begin(), bucket.end());
    for (std::size_t lo = 0; lo < bucket.size();) {
      std::size_t hi = lo + 1;
      while (hi < bucket.size() && bucket[hi].first == bucket[lo].first) ++hi;
      for (std::size_t a = lo; a < hi; ++a) {
        for (std::size_t b = a + 1; b < hi; ++b) edges.emplace_back(bucket[a].second, bucket[b].second);
      }
      lo = hi;
    }
  }
}

}  // namespace detail

/// Builds the exact k-change graph by bucketing words on every width-k mask
/// position: two distinct words share a bucket iff they agree outside that
/// window.
inline ChangeGraph build_change_graph(const FactorSet& nodes, std::size_t k) {
  const std::size_t n = nodes.length();
  if (k == 0) throw std::invalid_argument("change width must be positive");
  if (k > n) throw std::invalid_argument("change width exceeds word length");
  ChangeGraph g;
  g.n = n;
  g.k = k;
  g.nodes = nodes.sorted();
  const std::size_t m = g.nodes.size();
  const std::size_t windows = n - k + 1;
  if (n <= BinaryWord::block_bits) {
    std::vector<std::uint64_t> bits(m);
    for (std::size_t v = 0; v < m; ++v) bits[v] = g.nodes[v].window64(0, n);
    const std::uint64_t ones = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    detail::bucket_edges<std::uint64_t>(
        m, windows, [&](std::uint32_t v, std::size_t p) { return bits[v] & ~(ones << (n - k - p)); }, g.edges);
  } else {
    detail::bucket_edges<BinaryWord>(
        m, windows,
        [&](std::uint32_t v, std::size_t p) {
          BinaryWord key = g.nodes[v];
          for (std::size_t t = p; t < p + k; ++t) key.set(t, false);
          return key;
        },
        g.edges);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  g.adjacency.assign(m, {});
  for (auto [a, b] : g.edges) {
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
  }
  for (auto& adj : g.adjacency) std::sort(adj.begin(), adj.end());
  return g;
}

/// Components as sorted node-index lists, ordered by smallest member.
inline std::vector<std::vector<std::uint32_t>> connected_components(const ChangeGraph& g) {
  DisjointSet ds(g.nodes.size());
  for (auto [a, b] : g.edges) ds.unite(a, b);
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::size_t> slot(g.nodes.size(), static_cast<std::size_t>(-1));
  for (std::uint32_t v = 0; v < g.nodes.size(); ++v) {
    const std::size_t root = ds.find(v);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(v);
  }
  return out;
}

struct HammingPath {
  std::vector<BinaryWord> words;
  [[nodiscard]] std::size_t edge_count() const { return words.empty() ? 0 : words.size() - 1; }
};

/// Whether consecutive words differ in one nonempty block of width <= k.
inline bool validate_path(const HammingPath& path, std::size_t k) {
  for (std::size_t t = 1; t < path.words.size(); ++t) {
    if (path.words[t].size() != path.words[t - 1].size()) return false;
    const std::size_t w = change_width(path.words[t - 1], path.words[t]);
    if (w == 0 || w > k) return false;
  }
  return true;
}

/// Shortest path; neighbors are expanded in lexicographic order.
inline std::optional<HammingPath> bfs_path(const ChangeGraph& g, const BinaryWord& from, const BinaryWord& to) {
  const auto s = g.index_of(from);
  const auto t = g.index_of(to);
  if (!s || !t) throw std::invalid_argument("node not in graph");
  constexpr std::uint32_t unseen = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> parent(g.nodes.size(), unseen);
  std::deque<std::uint32_t> queue{*s};
  parent[*s] = *s;
  while (!queue.empty() && parent[*t] == unseen) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (auto w : g.adjacency[v]) {
      if (parent[w] == unseen) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  if (parent[*t] == unseen) return std::nullopt;
  HammingPath path;
  for (std::uint32_t v = *t;; v = parent[v]) {
    path.words.push_back(g.nodes[v]);
    if (v == *s) break;
  }
  std::reverse(path.words.begin(), path.words.end());
  return path;
}

/// Replays the level's schedule and records the window
/// [window_start, window_start + n) whenever it changes.
inline HammingPath schedule_projection_path(const Level& level, std::size_t window_start, std::size_t n) {
  if (n == 0 || window_start > level.word_length || n > level.word_length - window_start)
    throw std::out_of_range("window outside the level's words");
  HammingPath path;
  BinaryWord cur = level.words.front();
  path.words.push_back(cur.factor(window_start, n));
  for (const Flip& f : level.schedule) {
    if (f.position >= cur.size() || cur[f.position] == f.symbol)
      throw std::invalid_argument("schedule step is not a flip");
    cur.set(f.position, f.symbol);
    if (f.position >= window_start && f.position < window_start + n) {
      BinaryWord w = path.words.back();
      w.set(f.position - window_start, f.symbol);
      path.words.push_back(std::move(w));
    }
  }
  return path;
}

/// How the last word of a level, read one step to the left, matches the
/// first word: windows of words[n-1] at c and of words[0] at c+1 agree
/// unless they cover the single wraparound column.
struct ShiftCorrespondence {
  bool consistent = false;
  /// Column of w_0·0 where w_0·0 and 0·w_{n-1} differ.
  std::optional<std::size_t> differing_column;
  std::size_t windows_checked = 0;
  std::size_t windows_agreeing = 0;
  std::size_t windows_intruded = 0;
};

inline ShiftCorrespondence left_shift_correspondence(const Level& level, std::size_t n) {
  if (n == 0 || n >= level.word_length) throw std::invalid_argument("window length must be in [1, ell)");
  ShiftCorrespondence r;
  r.differing_column = wrap_position(level);
  if (!r.differing_column) return r;
  const std::size_t q = *r.differing_column;
  const BinaryWord& first = level.words.front();
  const BinaryWord& last = level.words.back();
  r.consistent = true;
  for (std::size_t c = 0; c + n + 1 <= level.word_length; ++c) {
    ++r.windows_checked;
    const bool intruded = q >= c + 1 && q <= c + n;
    const bool equal = last.factor(c, n) == first.factor(c + 1, n);
    if (equal) ++r.windows_agreeing;
    if (intruded) ++r.windows_intruded;
    if (equal == intruded) r.consistent = false;
  }
  return r;
}

inline void write_dot(std::ostream& out, const ChangeGraph& g) {
  out << "graph change_graph_n" << g.n << "_k" << g.k << " {\n";
  for (std::size_t v = 0; v < g.nodes.size(); ++v) out << "  " << v << " [label=\"" << g.nodes[v].str() << "\"];\n";
  for (auto [a, b] : g.edges) out << "  " << a << " -- " << b << ";\n";
  out << "}\n";
}

inline nlohmann::ordered_json to_json(const ChangeGraph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.n;
  j["k"] = g.k;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& w : g.nodes) j["nodes"].push_back(w.str());
  j["edges"] = nlohmann::ordered_json::array();
  for (auto [a, b] : g.edges) j["edges"].push_back({a, b});
  return j;
}

}  // namespace hamshift
