// Prints level 1 of the construction as a walk: each word, the column that
// changed, and the 4-window path traced by that column's neighborhood.

#include <cstdlib>
#include <iostream>

#include "hamshift/hamshift.hpp"

int main(int argc, char** argv) {
  const std::size_t window = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 4;
  const auto tower = hamshift::build_tower(1);
  const auto& level = tower[1];

  std::cout << "level 1: n=" << level.size() << " ell=" << level.word_length << " k=" << *level.block_count << "\n";
  std::cout << "  " << level.words[0] << "\n";
  for (std::size_t j = 1; j < level.size(); ++j) {
    const auto& f = level.schedule[j - 1];
    std::cout << "  " << level.words[j] << "  flip " << f.position << " -> " << f.symbol << "\n";
  }

  if (window == 0 || window >= level.word_length) {
    std::cerr << "window must be in [1, " << level.word_length << ")\n";
    return 1;
  }
  const auto lang = hamshift::factor_language(tower, window);
  const auto g = hamshift::build_change_graph(lang.factors, 1);
  std::cout << "\nL_" << window << " over level 1: " << g.nodes.size() << " words, "
            << hamshift::connected_components(g).size() << " component(s) under single flips\n";

  const auto path = hamshift::schedule_projection_path(level, 0, window);
  std::cout << "window at column 0 along the schedule:";
  for (const auto& w : path.words) std::cout << ' ' << w;
  std::cout << "\n";
}
