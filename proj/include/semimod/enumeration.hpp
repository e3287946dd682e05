#pragma once

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "semigroup.hpp"
#include "semimodule.hpp"

namespace semimod {

/// Node of the tree of increasing semimodules. Children extend the parent's
/// generator list by one gap exceeding u_last, sorted by that gap.
struct TreeNode {
  GammaSemimodule semimodule;
  int u_last = 0;
  std::vector<TreeNode> children;
};

/// Gaps g not in D with g > u_s (u_0 = 0, so every gap for D = [0]).
inline std::vector<int> candidate_generators(const GammaSemimodule& d) {
  USequence u;
  if (!is_increasing(d, &u)) {
    throw Error(ErrorKind::NotIncreasing, d.to_string() + " is not increasing");
  }
  const int u_last = u.values.empty() ? 0 : u.values.back();
  std::vector<int> out;
  for (const Gap& gap : d.semigroup().gaps()) {
    if (gap.value > u_last && !d.contains(gap.value)) out.push_back(gap.value);
  }
  return out;
}

namespace detail {

inline TreeNode grow(GammaSemimodule d, int u_last) {
  TreeNode node{std::move(d), u_last, {}};
  const auto& gens = node.semimodule.generators();
  for (int g : candidate_generators(node.semimodule)) {
    std::vector<int> extended = gens;
    extended.push_back(g);
    const int u_new = first_collision(node.semimodule.semigroup(), g, gens);
    node.children.push_back(
        grow(GammaSemimodule(node.semimodule.semigroup_ptr(), std::move(extended)), u_new));
  }
  return node;
}

}  // namespace detail

/// Complete tree of increasing semimodules with first nonzero generator g1.
/// The root [0, g1] is level 0.
inline TreeNode increasing_tree(std::shared_ptr<const Semigroup> s, int g1) {
  if (!s->is_gap(g1)) throw Error(ErrorKind::NotAGap, std::to_string(g1) + " is not a gap");
  std::vector<int> gens{0, g1};
  const int u1 = detail::first_collision(*s, g1, {0});
  return detail::grow(GammaSemimodule(s, std::move(gens)), u1);
}

inline TreeNode increasing_tree(const Semigroup& s, int g1) {
  return increasing_tree(std::make_shared<const Semigroup>(s), g1);
}

/// Forest over every first generator under a synthetic root [0]. With
/// `parallel`, subtrees are built concurrently; children stay sorted by g1.
inline TreeNode increasing_forest(std::shared_ptr<const Semigroup> s, bool parallel = false) {
  TreeNode root{GammaSemimodule(s, {0}), 0, {}};
  const auto& gaps = s->gaps();
  if (parallel) {
    std::vector<std::future<TreeNode>> jobs;
    for (const Gap& gap : gaps) {
      jobs.push_back(std::async(std::launch::async, [s, g = gap.value] { return increasing_tree(s, g); }));
    }
    for (auto& job : jobs) root.children.push_back(job.get());
  } else {
    for (const Gap& gap : gaps) root.children.push_back(increasing_tree(s, gap.value));
  }
  return root;
}

inline TreeNode increasing_forest(const Semigroup& s, bool parallel = false) {
  return increasing_forest(std::make_shared<const Semigroup>(s), parallel);
}

/// Pre-order visit of every node with its depth.
inline void visit(const TreeNode& node, const std::function<void(const TreeNode&, int)>& fn,
                  int depth = 0) {
  fn(node, depth);
  for (const auto& child : node.children) visit(child, fn, depth + 1);
}

inline std::size_t count_nodes(const TreeNode& node) {
  std::size_t n = 0;
  visit(node, [&](const TreeNode&, int) { ++n; });
  return n;
}

/// Number of nodes per depth (index 0 is the root level).
inline std::vector<std::size_t> level_counts(const TreeNode& node) {
  std::vector<std::size_t> counts;
  visit(node, [&](const TreeNode&, int depth) {
    if (counts.size() <= static_cast<std::size_t>(depth)) counts.resize(depth + 1);
    ++counts[depth];
  });
  return counts;
}

inline std::vector<GammaSemimodule> collect_semimodules(const TreeNode& node) {
  std::vector<GammaSemimodule> out;
  visit(node, [&](const TreeNode& n, int) { out.push_back(n.semimodule); });
  return out;
}

/// Every normalized semimodule, one per lean set (lattice path), sorted by
/// generator list. Refuses semigroups with alpha*beta above `max_product`.
inline std::vector<GammaSemimodule> all_semimodules(std::shared_ptr<const Semigroup> s, int max_product = 80) {
  if (s->product() > max_product) {
    throw Error(ErrorKind::TooLarge, "alpha*beta = " + std::to_string(s->product()) +
                                         " exceeds " + std::to_string(max_product));
  }
  std::vector<Gap> by_a = s->gaps();
  std::sort(by_a.begin(), by_a.end(), [](const Gap& x, const Gap& y) {
    return x.a != y.a ? x.a < y.a : x.b > y.b;
  });
  std::vector<GammaSemimodule> out;
  std::vector<int> chosen{0};
  // lean sets are exactly the chains with a strictly increasing and b strictly decreasing
  std::function<void(std::size_t, int, int)> extend = [&](std::size_t from, int last_a, int last_b) {
    out.emplace_back(s, chosen);
    for (std::size_t i = from; i < by_a.size(); ++i) {
      if (by_a[i].a > last_a && by_a[i].b < last_b) {
        chosen.push_back(by_a[i].value);
        extend(i + 1, by_a[i].a, by_a[i].b);
        chosen.pop_back();
      }
    }
  };
  extend(0, 0, s->alpha());
  std::sort(out.begin(), out.end(), [](const GammaSemimodule& x, const GammaSemimodule& y) {
    return x.generators() < y.generators();
  });
  return out;
}

/// Exhaustive oracle: every lean set filtered by is_increasing.
inline std::vector<GammaSemimodule> brute_force_increasing(std::shared_ptr<const Semigroup> s,
                                                           int max_product = 80) {
  std::vector<GammaSemimodule> out;
  for (auto& d : all_semimodules(std::move(s), max_product)) {
    if (is_increasing(d)) out.push_back(std::move(d));
  }
  return out;
}

inline nlohmann::json tree_to_json(const TreeNode& node) {
  nlohmann::json children = nlohmann::json::array();
  for (const auto& child : node.children) children.push_back(tree_to_json(child));
  return {{"generators", node.semimodule.generators()},
          {"u_last", node.u_last},
          {"children", std::move(children)}};
}

inline TreeNode tree_from_json(std::shared_ptr<const Semigroup> s, const nlohmann::json& j) {
  TreeNode node{GammaSemimodule(s, j.at("generators").get<std::vector<int>>()),
                j.at("u_last").get<int>(),
                {}};
  for (const auto& child : j.at("children")) node.children.push_back(tree_from_json(s, child));
  return node;
}

inline bool same_tree(const TreeNode& x, const TreeNode& y) {
  if (!(x.semimodule == y.semimodule) || x.u_last != y.u_last ||
      x.children.size() != y.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!same_tree(x.children[i], y.children[i])) return false;
  }
  return true;
}

/// Graphviz rendering; vertices are labeled with the generator lists.
inline std::string tree_to_dot(const TreeNode& root) {
  std::ostringstream out;
  out << "digraph increasing_semimodules {\n";
  out << "  node [shape=box, fontname=\"monospace\"];\n";
  int next_id = 0;
  std::function<int(const TreeNode&)> emit = [&](const TreeNode& node) {
    const int id = next_id++;
    out << "  n" << id << " [label=\"" << node.semimodule.to_string() << "\\nu=" << node.u_last
        << "\"];\n";
    for (const auto& child : node.children) {
      const int child_id = emit(child);
      out << "  n" << id << " -> n" << child_id << ";\n";
    }
    return id;
  };
  emit(root);
  out << "}\n";
  return out.str();
}

}  // namespace semimod
