#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semimodule.hpp"

namespace semimod {

namespace detail {

/// Lattice points visited by the staircase from (0, alpha) to (beta, 0):
/// east steps until the next turn's a, then south to its b.
inline std::vector<std::pair<int, int>> path_points(const LatticePath& p) {
  std::vector<std::pair<int, int>> pts{{0, p.alpha}};
  int x = 0, y = p.alpha;
  auto go = [&](int tx, int ty) {
    while (x < tx) pts.emplace_back(++x, y);
    while (y > ty) pts.emplace_back(x, --y);
  };
  for (auto [a, b] : p.turns) go(a, b);
  go(p.beta, 0);
  return pts;
}

}  // namespace detail

/// Character grid, north up. '#' marks ES-turns, '+' other path points and
/// '\' the line from (0, alpha) to (beta, 0) where the path does not run.
inline std::string path_to_ascii(const LatticePath& p) {
  std::vector<std::string> grid(p.alpha + 1, std::string(p.beta + 1, '.'));
  for (int x = 0; x <= p.beta; ++x) {
    for (int y = 0; y <= p.alpha; ++y) {
      if (x * p.alpha + y * p.beta == p.alpha * p.beta) grid[p.alpha - y][x] = '\\';
    }
  }
  for (auto [x, y] : detail::path_points(p)) grid[p.alpha - y][x] = '+';
  for (auto [a, b] : p.turns) grid[p.alpha - b][a] = '#';
  std::ostringstream out;
  for (const auto& row : grid) out << row << '\n';
  return out.str();
}

inline std::string path_to_dot(const LatticePath& p) {
  const auto pts = detail::path_points(p);
  std::ostringstream out;
  out << "digraph lattice_path {\n  node [shape=point];\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const bool turn = std::find(p.turns.begin(), p.turns.end(), pts[i]) != p.turns.end();
    out << "  p" << i << " [pos=\"" << pts[i].first << "," << pts[i].second << "!\"";
    if (turn) out << ", shape=circle, width=0.15, label=\"\", color=red";
    out << "];\n";
  }
  for (std::size_t i = 1; i < pts.size(); ++i) out << "  p" << i - 1 << " -> p" << i << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string path_to_svg(const LatticePath& p, int cell = 24) {
  const int pad = cell;
  const int w = p.beta * cell + 2 * pad, h = p.alpha * cell + 2 * pad;
  auto px = [&](int x) { return pad + x * cell; };
  auto py = [&](int y) { return pad + (p.alpha - y) * cell; };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
      << w << ' ' << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int x = 0; x <= p.beta; ++x) {
    out << "<line x1=\"" << px(x) << "\" y1=\"" << py(0) << "\" x2=\"" << px(x) << "\" y2=\"" << py(p.alpha)
        << "\" stroke=\"#ddd\"/>\n";
  }
  for (int y = 0; y <= p.alpha; ++y) {
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(y) << "\" x2=\"" << px(p.beta) << "\" y2=\"" << py(y)
        << "\" stroke=\"#ddd\"/>\n";
  }
  out << "<line x1=\"" << px(0) << "\" y1=\"" << py(p.alpha) << "\" x2=\"" << px(p.beta) << "\" y2=\"" << py(0)
      << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
  bool first = true;
  for (auto [x, y] : detail::path_points(p)) {
    out << (first ? "" : " ") << px(x) << ',' << py(y);
    first = false;
  }
  out << "\"/>\n";
  for (auto [a, b] : p.turns) {
    out << "<circle cx=\"" << px(a) << "\" cy=\"" << py(b) << "\" r=\"4\" fill=\"red\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

inline nlohmann::json path_to_json(const LatticePath& p) {
  nlohmann::json turns = nlohmann::json::array();
  for (auto [a, b] : p.turns) turns.push_back({a, b});
  return {{"alpha", p.alpha}, {"beta", p.beta}, {"turns", turns}};
}

inline LatticePath path_from_json(const nlohmann::json& j) {
  LatticePath p{j.at("alpha").get<int>(), j.at("beta").get<int>(), {}};
  for (const auto& t : j.at("turns")) p.turns.emplace_back(t.at(0).get<int>(), t.at(1).get<int>());
  return p;
}

}  // namespace semimod
