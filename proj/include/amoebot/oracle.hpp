#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amoebot/config.hpp"
#include "amoebot/grid.hpp"

namespace amoebot::oracle {

/// An agent seen with global knowledge: the node of its particle and the
/// global direction of the first node of its empty sequence.
struct GlobalAgent {
  NodeCoord node;
  int anchor = 0;
  int empty_seq_len = 0;

  friend auto operator<=>(const GlobalAgent&, const GlobalAgent&) = default;
};

enum class BoundaryKind { outer, inner };

struct Boundary {
  BoundaryKind kind = BoundaryKind::outer;
  std::vector<GlobalAgent> agent_cycle;  // successor order
  std::set<NodeCoord> particle_set;
  int turning_number = 0;                // sum of turn values, 60 degree units
};

struct BoundaryReport {
  std::vector<Boundary> boundaries;  // outer boundary first when present
  int L = 0;
  int C = 0;
  int D = 0;
  int n = 0;

  int inner_count() const;
  const Boundary* outer() const;
  std::size_t total_agents() const;
  /// Index of the boundary that contains `agent`, if any.
  std::optional<std::size_t> boundary_of(const GlobalAgent& agent) const;
};

/// Flood fill over the padded bounding box plus the empty-sequence rule
/// applied with global coordinates.
BoundaryReport classify_boundaries(const Configuration& cfg);

/// Diameter of the occupied subgraph, by BFS from every node.
int diameter(const std::set<NodeCoord>& nodes);

bool sqrt_bound_check(const BoundaryReport& report);

/// Length-first order; equal lengths compare most significant digit first.
std::strong_ordering compare_identifiers(std::span<const int> a, std::span<const int> b);

/// True iff the two sequences are equal up to rotation.
bool cyclic_equal(std::span<const GlobalAgent> a, std::span<const GlobalAgent> b);

struct GroundTruth {
  std::vector<int> active_candidates;  // per boundary of the report
  bool leader_on_outer = true;         // vacuously true without a leader
  bool sole(std::size_t boundary) const { return active_candidates[boundary] == 1; }
};

GroundTruth ground_truth(const BoundaryReport& report, std::span<const GlobalAgent> active_candidates,
                         std::optional<NodeCoord> leader);

std::string format_report(const BoundaryReport& report);

}  // namespace amoebot::oracle
