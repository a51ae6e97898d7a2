#pragma once

// Plain std::string reference implementations. Deliberately naive; the
// tests compare the library against these.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline std::set<std::string> factors(const std::string& w, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t s = 0; s + n <= w.size(); ++s) out.insert(w.substr(s, n));
  return out;
}

inline std::vector<std::size_t> occurrences(const std::string& text, const std::string& pattern) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s + pattern.size() <= text.size(); ++s) {
    if (text.compare(s, pattern.size(), pattern) == 0) out.push_back(s);
  }
  return out;
}

inline std::size_t hamming(const std::string& a, const std::string& b) {
  std::size_t d = 0;
  for (std::size_t p = 0; p < a.size(); ++p) d += a[p] != b[p];
  return d;
}

/// Width of the span covering all differences.
inline std::size_t change_width(const std::string& a, const std::string& b) {
  std::size_t lo = a.size(), hi = 0;
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (a[p] != b[p]) {
      lo = std::min(lo, p);
      hi = p;
    }
  }
  return lo == a.size() ? 0 : hi - lo + 1;
}

/// Components of the k-change graph by all-pairs comparison.
inline std::size_t components(const std::vector<std::string>& nodes, std::size_t k) {
  std::vector<std::size_t> parent(nodes.size());
  for (std::size_t v = 0; v < nodes.size(); ++v) parent[v] = v;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  std::size_t comps = nodes.size();
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      const std::size_t w = change_width(nodes[a], nodes[b]);
      if (w >= 1 && w <= k) {
        const std::size_t ra = find(a), rb = find(b);
        if (ra != rb) {
          parent[ra] = rb;
          --comps;
        }
      }
    }
  }
  return comps;
}

inline std::size_t edge_count(const std::vector<std::string>& nodes, std::size_t k) {
  std::size_t e = 0;
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      const std::size_t w = change_width(nodes[a], nodes[b]);
      e += w >= 1 && w <= k;
    }
  }
  return e;
}

/// Fibonacci word by the substitution 0 -> 01, 1 -> 0.
inline std::string fibonacci(std::size_t min_length) {
  std::string w = "0";
  while (w.size() < min_length) {
    std::string next;
    for (char c : w) next += c == '0' ? "01" : "0";
    w = std::move(next);
  }
  return w;
}

/// Mechanical word floor((t+1)p/q) - floor(tp/q) by direct division.
inline std::string mechanical(std::uint64_t p, std::uint64_t q, std::size_t length) {
  std::string w;
  for (std::size_t t = 0; t < length; ++t) w += static_cast<char>('0' + ((t + 1) * p / q - t * p / q));
  return w;
}

inline std::string random_bits(std::mt19937_64& rng, std::size_t length) {
  std::string w;
  for (std::size_t t = 0; t < length; ++t) w += static_cast<char>('0' + (rng() & 1));
  return w;
}

/// FNV-1a 64 over every word followed by a newline.
inline std::uint64_t fnv1a(const std::vector<std::string>& words) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto& w : words) {
    for (char c : w + "\n") {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

}  // namespace oracle
