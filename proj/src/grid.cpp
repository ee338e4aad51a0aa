#include "amoebot/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace amoebot {

Direction direction_between(NodeCoord a, NodeCoord b) {
  const NodeCoord diff = b - a;
  for (int i = 0; i < 6; ++i) {
    if (kDirectionVectors[static_cast<std::size_t>(i)] == diff) return Direction(i);
  }
  throw NotAdjacent("nodes (" + std::to_string(a.x) + "," + std::to_string(a.y) + ") and (" +
                    std::to_string(b.x) + "," + std::to_string(b.y) + ") are not adjacent");
}

bool adjacent(NodeCoord a, NodeCoord b) {
  const NodeCoord diff = b - a;
  return std::find(kDirectionVectors.begin(), kDirectionVectors.end(), diff) != kDirectionVectors.end();
}

int turn_value(int empty_seq_len) {
  if (empty_seq_len < 1 || empty_seq_len > 5) {
    throw std::out_of_range("empty sequence length must lie in [1,5], got " + std::to_string(empty_seq_len));
  }
  return empty_seq_len - 2;
}

int hex_distance(NodeCoord a, NodeCoord b) {
  const NodeCoord d = b - a;
  return std::max({std::abs(d.x), std::abs(d.y), std::abs(d.x + d.y)});
}

}  // namespace amoebot
