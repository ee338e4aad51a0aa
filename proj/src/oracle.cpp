#include "amoebot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace amoebot::oracle {

namespace {

struct EmptyRun {
  int anchor = 0;  // global direction of the first empty node
  int length = 0;
};

std::vector<EmptyRun> empty_runs(const std::set<NodeCoord>& occ, NodeCoord p) {
  std::array<bool, 6> full{};
  for (int d = 0; d < 6; ++d) full[static_cast<std::size_t>(d)] = occ.contains(step(p, Direction(d)));
  std::vector<EmptyRun> runs;
  for (int d = 0; d < 6; ++d) {
    if (full[static_cast<std::size_t>(d)] || !full[static_cast<std::size_t>((d + 5) % 6)]) continue;
    int len = 0;
    while (len < 6 && !full[static_cast<std::size_t>((d + len) % 6)]) ++len;
    runs.push_back({d, len});
  }
  return runs;
}

}  // namespace

int BoundaryReport::inner_count() const {
  return static_cast<int>(std::count_if(boundaries.begin(), boundaries.end(),
                                        [](const Boundary& b) { return b.kind == BoundaryKind::inner; }));
}

const Boundary* BoundaryReport::outer() const {
  for (const auto& b : boundaries)
    if (b.kind == BoundaryKind::outer) return &b;
  return nullptr;
}

std::size_t BoundaryReport::total_agents() const {
  std::size_t total = 0;
  for (const auto& b : boundaries) total += b.agent_cycle.size();
  return total;
}

std::optional<std::size_t> BoundaryReport::boundary_of(const GlobalAgent& agent) const {
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    for (const auto& a : boundaries[i].agent_cycle) {
      if (a.node == agent.node && a.anchor == agent.anchor) return i;
    }
  }
  return std::nullopt;
}

int diameter(const std::set<NodeCoord>& nodes) {
  int best = 0;
  for (NodeCoord src : nodes) {
    std::unordered_map<NodeCoord, int> dist{{src, 0}};
    std::deque<NodeCoord> queue{src};
    while (!queue.empty()) {
      const NodeCoord v = queue.front();
      queue.pop_front();
      const int dv = dist[v];
      best = std::max(best, dv);
      for (NodeCoord w : neighbors(v)) {
        if (nodes.contains(w) && !dist.contains(w)) {
          dist.emplace(w, dv + 1);
          queue.push_back(w);
        }
      }
    }
  }
  return best;
}

BoundaryReport classify_boundaries(const Configuration& cfg) {
  const auto& occ = cfg.occupied;
  BoundaryReport report;
  report.n = static_cast<int>(occ.size());
  if (occ.empty()) return report;

  int minx = occ.begin()->x, maxx = minx, miny = occ.begin()->y, maxy = miny;
  for (NodeCoord v : occ) {
    minx = std::min(minx, v.x);
    maxx = std::max(maxx, v.x);
    miny = std::min(miny, v.y);
    maxy = std::max(maxy, v.y);
  }
  --minx, --miny, ++maxx, ++maxy;
  auto in_box = [&](NodeCoord v) { return v.x >= minx && v.x <= maxx && v.y >= miny && v.y <= maxy; };

  // Label empty regions inside the padded box; region 0 touches the pad.
  std::map<NodeCoord, int> region;
  int next_region = 0;
  auto fill_from = [&](NodeCoord seed) {
    const int id = next_region++;
    region[seed] = id;
    std::deque<NodeCoord> queue{seed};
    while (!queue.empty()) {
      const NodeCoord v = queue.front();
      queue.pop_front();
      for (NodeCoord w : neighbors(v)) {
        if (in_box(w) && !occ.contains(w) && !region.contains(w)) {
          region[w] = id;
          queue.push_back(w);
        }
      }
    }
  };
  fill_from({minx, miny});
  for (int y = miny; y <= maxy; ++y)
    for (int x = minx; x <= maxx; ++x)
      if (!occ.contains({x, y}) && !region.contains({x, y})) fill_from({x, y});

  // Every agent, keyed by (node, anchor), with its region and successor.
  std::map<std::pair<NodeCoord, int>, EmptyRun> agents;
  for (NodeCoord p : occ) {
    for (const auto& run : empty_runs(occ, p)) agents.emplace(std::pair{p, run.anchor}, run);
  }
  auto successor = [&](NodeCoord p, const EmptyRun& run) {
    const NodeCoord last_empty = step(p, Direction(run.anchor + run.length - 1));
    const NodeCoord q = step(p, Direction(run.anchor + run.length));
    for (const auto& qrun : empty_runs(occ, q)) {
      for (int i = 0; i < qrun.length; ++i) {
        if (step(q, Direction(qrun.anchor + i)) == last_empty) return std::pair{q, qrun.anchor};
      }
    }
    throw std::logic_error("oracle: successor of an agent not found");
  };

  std::set<std::pair<NodeCoord, int>> visited;
  std::map<int, int> boundary_of_region;
  for (const auto& [key, run] : agents) {
    if (visited.contains(key)) continue;
    Boundary b;
    const int reg = region.at(step(key.first, Direction(key.second)));
    auto cur = key;
    do {
      const auto& r = agents.at(cur);
      if (region.at(step(cur.first, Direction(cur.second))) != reg) {
        throw std::logic_error("oracle: boundary cycle crosses empty regions");
      }
      visited.insert(cur);
      b.agent_cycle.push_back({cur.first, cur.second, r.length});
      b.particle_set.insert(cur.first);
      b.turning_number += r.length - 2;
      cur = successor(cur.first, r);
    } while (cur != key);
    b.kind = reg == 0 ? BoundaryKind::outer : BoundaryKind::inner;
    if (!boundary_of_region.emplace(reg, static_cast<int>(report.boundaries.size())).second) {
      throw std::logic_error("oracle: empty region with two agent cycles");
    }
    report.boundaries.push_back(std::move(b));
  }
  std::stable_partition(report.boundaries.begin(), report.boundaries.end(),
                        [](const Boundary& b) { return b.kind == BoundaryKind::outer; });

  if (const Boundary* outer = report.outer()) {
    report.L = static_cast<int>(outer->agent_cycle.size());
    report.C = static_cast<int>(outer->particle_set.size());
  }
  report.D = diameter(occ);
  return report;
}

bool sqrt_bound_check(const BoundaryReport& report) {
  if (report.n <= 1) return true;
  return static_cast<double>(report.L) >= std::sqrt(static_cast<double>(report.n));
}

std::strong_ordering compare_identifiers(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

bool cyclic_equal(std::span<const GlobalAgent> a, std::span<const GlobalAgent> b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t shift = 0; shift < b.size(); ++shift) {
    if (b[shift] != a[0]) continue;
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i) same = a[i] == b[(i + shift) % b.size()];
    if (same) return true;
  }
  return false;
}

GroundTruth ground_truth(const BoundaryReport& report, std::span<const GlobalAgent> active_candidates,
                         std::optional<NodeCoord> leader) {
  GroundTruth truth;
  truth.active_candidates.assign(report.boundaries.size(), 0);
  for (const auto& c : active_candidates) {
    if (auto idx = report.boundary_of(c)) ++truth.active_candidates[*idx];
  }
  if (leader) {
    const Boundary* outer = report.outer();
    truth.leader_on_outer = report.n == 1 || (outer != nullptr && outer->particle_set.contains(*leader));
  }
  return truth;
}

std::string format_report(const BoundaryReport& report) {
  std::ostringstream out;
  out << "n=" << report.n << " L=" << report.L << " C=" << report.C << " D=" << report.D << '\n';
  out << "boundaries=" << report.boundaries.size() << " (outer=" << (report.outer() ? 1 : 0)
      << ", inner=" << report.inner_count() << ")\n";
  for (std::size_t i = 0; i < report.boundaries.size(); ++i) {
    const auto& b = report.boundaries[i];
    out << "  boundary " << i << ": " << (b.kind == BoundaryKind::outer ? "outer" : "inner")
        << " agents=" << b.agent_cycle.size() << " particles=" << b.particle_set.size()
        << " turning=" << b.turning_number << '\n';
  }
  out << "L >= sqrt(n): " << (sqrt_bound_check(report) ? "OK" : "VIOLATED") << '\n';
  return out.str();
}

}  // namespace amoebot::oracle
