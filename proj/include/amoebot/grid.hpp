#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>

namespace amoebot {

/// Axial position on the triangular grid. The y-axis sits at 60 degrees to
/// the x-axis, so the six unit steps are the vectors in kDirectionVectors.
struct NodeCoord {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const NodeCoord&, const NodeCoord&) = default;
  friend constexpr NodeCoord operator+(NodeCoord a, NodeCoord b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr NodeCoord operator-(NodeCoord a, NodeCoord b) { return {a.x - b.x, a.y - b.y}; }
};

/// Edge direction index in [0,5], increasing clockwise.
class Direction {
 public:
  constexpr Direction() = default;
  constexpr explicit Direction(int index) : index_(((index % 6) + 6) % 6) {}

  constexpr int index() const { return index_; }
  constexpr Direction opposite() const { return Direction(index_ + 3); }
  constexpr Direction rotated(int steps) const { return Direction(index_ + steps); }

  friend constexpr bool operator==(Direction, Direction) = default;

 private:
  int index_ = 0;
};

inline constexpr std::array<NodeCoord, 6> kDirectionVectors{{
    {1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}}};

constexpr NodeCoord vector_of(Direction d) { return kDirectionVectors[static_cast<std::size_t>(d.index())]; }

constexpr NodeCoord step(NodeCoord n, Direction d) { return n + vector_of(d); }

/// The six neighbours of `node` in clockwise order d0..d5.
constexpr std::array<NodeCoord, 6> neighbors(NodeCoord node) {
  std::array<NodeCoord, 6> out{};
  for (int i = 0; i < 6; ++i) out[static_cast<std::size_t>(i)] = step(node, Direction(i));
  return out;
}

class NotAdjacent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Direction d with a + vector(d) == b. Throws NotAdjacent otherwise.
Direction direction_between(NodeCoord a, NodeCoord b);

bool adjacent(NodeCoord a, NodeCoord b);

/// Turn, in units of 60 degrees (positive = clockwise), taken by a walker that
/// enters an agent from its predecessor and leaves towards its successor,
/// given the length of the agent's empty sequence. Exact integer rule:
/// d_out - d_in == k - 2 (mod 6).
int turn_value(int empty_seq_len);

/// Hexagonal distance between two nodes.
int hex_distance(NodeCoord a, NodeCoord b);

}  // namespace amoebot

template <>
struct std::hash<amoebot::NodeCoord> {
  std::size_t operator()(const amoebot::NodeCoord& n) const noexcept {
    const auto ux = static_cast<std::uint64_t>(static_cast<std::uint32_t>(n.x));
    const auto uy = static_cast<std::uint64_t>(static_cast<std::uint32_t>(n.y));
    return std::hash<std::uint64_t>{}((ux << 32) | uy);
  }
};
