#pragma once

#include <string>
#include <vector>

#include "hamshift/hamshift.hpp"

// Levels 0..2 built once per test binary.
inline const std::vector<hamshift::Level>& tower2() {
  static const std::vector<hamshift::Level> t = hamshift::build_tower(2);
  return t;
}

inline const std::vector<std::string>& level1_words() {
  static const std::vector<std::string> w{
      "01001011111010111110101", "01011011111010111110101", "01010011111010111110101", "01010111111010111110101",
      "01010101111010111110101", "01010101011010111110101", "01010111011010111110101", "01010111010010111110101",
      "01010111110010111110101", "01010111110110111110101", "01010111110100111110101", "01010111110101111110101",
      "01010111110101011110101", "01010111110101010110101", "01010111110101110110101", "01010111110101110100101",
      "01010111110101111100101", "01010111110101111101101", "01010111110101111101001", "11010111110101111101001",
      "11010111110101111101011", "11010111110101111101010"};
  return w;
}

inline std::vector<std::string> strings(const hamshift::Level& level) {
  std::vector<std::string> out;
  out.reserve(level.size());
  for (const auto& w : level.words) out.push_back(w.str());
  return out;
}
