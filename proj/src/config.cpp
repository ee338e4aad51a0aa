#include "amoebot/config.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <optional>
#include <sstream>

#include "amoebot/rng.hpp"

namespace amoebot {

namespace {

std::string coord_text(NodeCoord n) { return "(" + std::to_string(n.x) + "," + std::to_string(n.y) + ")"; }

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_int(std::string_view tok, int line_no) {
  int value = 0;
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  if (!tok.empty() && tok.front() == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(ConfigErrorKind::syntax, line_no, "expected a signed decimal integer, got '" + std::string(tok) + "'");
  }
  return value;
}

// First node (in set order) not reachable from the smallest node, if any.
std::optional<NodeCoord> first_unreachable(const std::set<NodeCoord>& nodes) {
  if (nodes.empty()) return std::nullopt;
  std::set<NodeCoord> seen{*nodes.begin()};
  std::deque<NodeCoord> queue{*nodes.begin()};
  while (!queue.empty()) {
    const NodeCoord v = queue.front();
    queue.pop_front();
    for (NodeCoord w : neighbors(v)) {
      if (nodes.contains(w) && seen.insert(w).second) queue.push_back(w);
    }
  }
  for (NodeCoord v : nodes) {
    if (!seen.contains(v)) return v;
  }
  return std::nullopt;
}

}  // namespace

bool is_connected(const std::set<NodeCoord>& nodes) { return !first_unreachable(nodes).has_value(); }

Configuration parse_configuration(std::string_view text) {
  Configuration cfg;
  std::map<NodeCoord, int> line_of;
  int line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    if (!header_seen) {
      if (tokens.size() != 2 || tokens[0] != "amoebot-config" || tokens[1] != "v1") {
        throw ConfigError(ConfigErrorKind::syntax, line_no, "missing header 'amoebot-config v1'");
      }
      header_seen = true;
      continue;
    }

    auto add_node = [&](NodeCoord n) {
      if (auto [it, fresh] = line_of.emplace(n, line_no); !fresh) {
        throw ConfigError(ConfigErrorKind::duplicate_node, line_no,
                          "node " + coord_text(n) + " already listed on line " + std::to_string(it->second));
      }
      cfg.occupied.insert(n);
    };

    if (tokens.size() == 2) {
      add_node({parse_int(tokens[0], line_no), parse_int(tokens[1], line_no)});
    } else if (tokens.size() == 4) {
      const NodeCoord a{parse_int(tokens[0], line_no), parse_int(tokens[1], line_no)};
      const NodeCoord b{parse_int(tokens[2], line_no), parse_int(tokens[3], line_no)};
      if (!adjacent(a, b)) {
        throw ConfigError(ConfigErrorKind::bad_expanded_pair, line_no,
                          "expanded particle nodes " + coord_text(a) + " and " + coord_text(b) + " are not adjacent");
      }
      add_node(a);
      add_node(b);
      cfg.expanded_pairs.insert(ExpandedPair::make(a, b));
    } else {
      throw ConfigError(ConfigErrorKind::syntax, line_no, "expected 'x y' or 'x y x2 y2'");
    }
  }
  if (!header_seen) throw ConfigError(ConfigErrorKind::syntax, 1, "missing header 'amoebot-config v1'");
  if (cfg.occupied.empty()) throw ConfigError(ConfigErrorKind::empty, line_no, "configuration has no particles");
  if (auto stray = first_unreachable(cfg.occupied)) {
    throw ConfigError(ConfigErrorKind::disconnected, line_of.at(*stray),
                      "node " + coord_text(*stray) + " is not connected to the rest of the system");
  }
  return cfg;
}

std::string serialize_configuration(const Configuration& cfg) {
  std::ostringstream out;
  out << kConfigHeader << '\n';
  std::set<NodeCoord> in_pairs;
  for (const auto& p : cfg.expanded_pairs) {
    in_pairs.insert(p.first);
    in_pairs.insert(p.second);
  }
  for (NodeCoord n : cfg.occupied) {
    if (!in_pairs.contains(n)) out << n.x << ' ' << n.y << '\n';
  }
  for (const auto& p : cfg.expanded_pairs) {
    out << p.first.x << ' ' << p.first.y << ' ' << p.second.x << ' ' << p.second.y << '\n';
  }
  return out.str();
}

ValidationReport validate(const Configuration& cfg, bool allow_expanded) {
  ValidationReport report;
  if (cfg.occupied.empty()) {
    report.issues.push_back({ConfigErrorKind::empty, "configuration has no particles"});
    return report;
  }
  if (auto stray = first_unreachable(cfg.occupied)) {
    report.issues.push_back({ConfigErrorKind::disconnected, "node " + coord_text(*stray) + " is disconnected"});
  }
  std::set<NodeCoord> used;
  for (const auto& p : cfg.expanded_pairs) {
    if (!cfg.occupied.contains(p.first) || !cfg.occupied.contains(p.second)) {
      report.issues.push_back({ConfigErrorKind::bad_expanded_pair,
                               "expanded pair " + coord_text(p.first) + "-" + coord_text(p.second) + " covers an unoccupied node"});
    }
    if (!adjacent(p.first, p.second)) {
      report.issues.push_back({ConfigErrorKind::bad_expanded_pair,
                               "expanded pair " + coord_text(p.first) + "-" + coord_text(p.second) + " is not adjacent"});
    }
    if (!used.insert(p.first).second || !used.insert(p.second).second) {
      report.issues.push_back({ConfigErrorKind::bad_expanded_pair,
                               "expanded pair " + coord_text(p.first) + "-" + coord_text(p.second) + " overlaps another pair"});
    }
  }
  if (!cfg.expanded_pairs.empty() && !allow_expanded) {
    report.issues.push_back({ConfigErrorKind::expanded_not_enabled, "configuration contains expanded particles but expanded simulation is not enabled"});
  }
  return report;
}

void require_valid(const Configuration& cfg, bool allow_expanded) {
  const auto report = validate(cfg, allow_expanded);
  if (!report.ok()) throw ConfigError(report.issues.front().kind, 0, report.issues.front().message);
}

Configuration generate(const ShapeSpec& shape, std::uint64_t seed) {
  Configuration cfg;
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, LineShape>) {
          if (s.n < 1) throw InvalidShapeParams("line needs n >= 1");
          for (int i = 0; i < s.n; ++i) cfg.occupied.insert({i, 0});
        } else if constexpr (std::is_same_v<S, ParallelogramShape>) {
          if (s.width < 1 || s.height < 1) throw InvalidShapeParams("parallelogram needs positive width and height");
          for (int y = 0; y < s.height; ++y)
            for (int x = 0; x < s.width; ++x) cfg.occupied.insert({x, y});
        } else if constexpr (std::is_same_v<S, AnnulusShape>) {
          if (s.hole_radius < 1 || s.outer_radius <= s.hole_radius) {
            throw InvalidShapeParams("annulus needs 1 <= hole < outer");
          }
          const int r = s.outer_radius;
          for (int y = -r; y <= r; ++y)
            for (int x = -r; x <= r; ++x) {
              const int d = hex_distance({0, 0}, {x, y});
              if (d >= s.hole_radius && d < s.outer_radius) cfg.occupied.insert({x, y});
            }
        } else {
          if (s.n < 1) throw InvalidShapeParams("random_connected needs n >= 1");
          Rng rng(seed);
          cfg.occupied.insert({0, 0});
          const auto seed_ring = neighbors({0, 0});
          std::set<NodeCoord> frontier(seed_ring.begin(), seed_ring.end());
          while (static_cast<int>(cfg.occupied.size()) < s.n) {
            auto it = frontier.begin();
            std::advance(it, static_cast<long>(rng.below(frontier.size())));
            const NodeCoord pick = *it;
            frontier.erase(it);
            cfg.occupied.insert(pick);
            for (NodeCoord w : neighbors(pick)) {
              if (!cfg.occupied.contains(w)) frontier.insert(w);
            }
          }
        }
      },
      shape);
  return cfg;
}

int port_offset(std::uint64_t seed, NodeCoord node) {
  const auto key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(node.x)) << 32) |
                   static_cast<std::uint32_t>(node.y);
  return static_cast<int>(splitmix64(seed ^ splitmix64(key)) % 6);
}

}  // namespace amoebot
