#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "amoebot/grid.hpp"

namespace amoebot {

/// Unordered adjacent node pair occupied by one expanded particle; stored
/// with first < second.
struct ExpandedPair {
  NodeCoord first;
  NodeCoord second;

  static ExpandedPair make(NodeCoord a, NodeCoord b) { return a < b ? ExpandedPair{a, b} : ExpandedPair{b, a}; }
  friend auto operator<=>(const ExpandedPair&, const ExpandedPair&) = default;
};

/// Geometry of a particle system: every occupied node, and which node pairs
/// belong to one expanded particle.
struct Configuration {
  std::set<NodeCoord> occupied;
  std::set<ExpandedPair> expanded_pairs;

  std::size_t node_count() const { return occupied.size(); }
  bool operator==(const Configuration&) const = default;
};

enum class CoinMode { fair, all_heads, all_tails };

/// Per-run parameters that travel alongside a Configuration.
struct RunParameters {
  std::uint64_t seed = 1;
  int radix = 256;
  bool almost_sure = false;
  bool termination_broadcast = false;
  bool expanded = false;
  CoinMode coin = CoinMode::fair;
};

enum class ConfigErrorKind { syntax, duplicate_node, disconnected, bad_expanded_pair, expanded_not_enabled, empty };

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorKind kind, int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), kind_(kind), line_(line) {}

  ConfigErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ConfigErrorKind kind_;
  int line_;
};

inline constexpr std::string_view kConfigHeader = "amoebot-config v1";

/// Parses the text format; validates the result (connectivity, pair sanity).
/// Expanded pairs are accepted here; whether they may be simulated is a run
/// decision (see validate()).
Configuration parse_configuration(std::string_view text);
std::string serialize_configuration(const Configuration& cfg);

struct ValidationIssue {
  ConfigErrorKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate(const Configuration& cfg, bool allow_expanded);
/// Throws the first issue of validate() as a ConfigError.
void require_valid(const Configuration& cfg, bool allow_expanded);

bool is_connected(const std::set<NodeCoord>& nodes);

struct LineShape { int n; };
struct ParallelogramShape { int width; int height; };
struct AnnulusShape { int outer_radius; int hole_radius; };
struct RandomConnectedShape { int n; };
using ShapeSpec = std::variant<LineShape, ParallelogramShape, AnnulusShape, RandomConnectedShape>;

class InvalidShapeParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Deterministic in (shape, seed). Only random_connected consumes the seed.
Configuration generate(const ShapeSpec& shape, std::uint64_t seed);

/// Local port p of the particle at `node` faces global direction
/// (p + offset) mod 6. Derived from (seed, node) only.
int port_offset(std::uint64_t seed, NodeCoord node);

}  // namespace amoebot
