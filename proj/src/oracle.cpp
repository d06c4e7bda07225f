#include "gst/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <vector>

namespace gst {

namespace {

int tree_max_degree(const Tree& t) {
  int d = root_degree(t);
  for (const auto& item : t.items)
    if (!item.is_copy()) d = std::max(d, tree_max_degree(*item.child));
  return d;
}

// Enumerates every ordered tree over a rank range: the root starts with its
// copy slot and grows the covered interval child by child, each child being
// a complete ordered subtree over an adjacent range on either side. This is
// the search space of the optimal-ordered dynamic programs.
struct Enumerator {
  int p;
  std::map<std::pair<int, int>, std::vector<TreePtr>> subtree_memo;

  // Complete subtrees over [i..j] as seen by a parent: a singleton is a bare
  // leaf, larger ranges carry a copy slot at their root.
  const std::vector<TreePtr>& subtrees(int i, int j) {
    auto key = std::make_pair(i, j);
    auto it = subtree_memo.find(key);
    if (it != subtree_memo.end()) return it->second;
    std::vector<TreePtr> out;
    if (i == j) {
      out.push_back(Tree::leaf(i));
    } else {
      for (int r = i; r <= j; ++r) {
        auto trees = rooted(i, j, r);
        out.insert(out.end(), trees.begin(), trees.end());
      }
    }
    return subtree_memo.emplace(key, std::move(out)).first->second;
  }

  std::vector<TreePtr> rooted(int i, int j, int r) {
    std::vector<TreePtr> out;
    grow(i, j, r, r, Tree::node(r, {TreeItem::copy_slot()}), out);
    return out;
  }

  void grow(int i, int j, int lo, int hi, const TreePtr& cur,
            std::vector<TreePtr>& out) {
    if (lo == i && hi == j) {
      out.push_back(cur);
      return;
    }
    if (lo > i) {
      for (int l = i; l < lo; ++l)
        for (const auto& c : subtrees(l, lo - 1))
          grow(i, j, l, hi, Tree::append(cur, c), out);
    }
    if (hi < j) {
      for (int h = hi + 1; h <= j; ++h)
        for (const auto& c : subtrees(hi + 1, h))
          grow(i, j, lo, h, Tree::append(cur, c), out);
    }
  }
};

DpResult exhaustive_impl(const Problem& problem, const CostModel& model,
                         std::optional<int> root, int max_degree,
                         bool strong_only) {
  int p = problem.size();
  if (p > 8)
    throw ResourceLimitError(
        "exhaustive_ordered enumerates super-exponentially many trees and is "
        "capped at p <= 8 (got p = " + std::to_string(p) + ")");
  if (root && (*root < 0 || *root >= p))
    throw ArgumentError("root out of range");
  Enumerator en{p, {}, {}};
  DpResult best{kInfTime, nullptr};
  auto scan = [&](int r) {
    for (const auto& t : en.rooted(0, p - 1, r)) {
      if (max_degree > 0 && tree_max_degree(*t) > max_degree) continue;
      if (strong_only && !check_ordering(*t, p).strong) continue;
      Time c = evaluate(*t, problem, model);
      if (c < best.cost) best = DpResult{c, t};
    }
  };
  if (root)
    scan(*root);
  else
    for (int r = 0; r < p; ++r) scan(r);
  return best;
}

}  // namespace

DpResult exhaustive_ordered(const Problem& problem, const CostModel& model,
                            std::optional<int> root) {
  return exhaustive_impl(problem, model, root, 0, false);
}

DpResult exhaustive_ordered_filtered(const Problem& problem,
                                     const CostModel& model,
                                     std::optional<int> root, int max_degree,
                                     bool strong_only) {
  if (max_degree < 0) throw ArgumentError("max_degree must be non-negative");
  return exhaustive_impl(problem, model, root, max_degree, strong_only);
}

namespace {

struct PeelChoice {
  std::uint16_t sub = 0;
  std::uint8_t peer = 0;
};

struct NonorderedSolver {
  const Problem& problem;
  const CostModel& model;
  int p;
  std::uint32_t full;
  std::vector<std::int64_t> mask_size;
  std::vector<Time> dp;          // dp[mask * p + r]
  std::vector<PeelChoice> peel;  // last child set and its root

  size_t at(std::uint32_t mask, int r) const {
    return static_cast<size_t>(mask) * static_cast<size_t>(p) + static_cast<size_t>(r);
  }

  Time comm(int sender, int receiver, std::int64_t s) const {
    if (s == 0) return 0;
    Time a = model.alpha(sender, receiver);
    if (is_inf(a)) return kInfTime;
    return time_add(a, model.beta(sender, receiver) * s);
  }

  void solve() {
    size_t masks = static_cast<size_t>(full) + 1;
    mask_size.assign(masks, 0);
    for (std::uint32_t m = 1; m <= full; ++m) {
      int low = std::countr_zero(m);
      mask_size[m] = mask_size[m & (m - 1)] + problem.block(low);
    }
    dp.assign(masks * static_cast<size_t>(p), kInfTime);
    peel.assign(masks * static_cast<size_t>(p), PeelChoice{});

    bool hom = model.is_homogeneous();
    // Best completion over roots of each subset, used when that subset is a
    // child: singletons are leaves and complete at time 0.
    std::vector<Time> hbest;
    std::vector<std::uint8_t> hroot;
    if (hom) {
      hbest.assign(masks, 0);
      hroot.assign(masks, 0);
    }

    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      int pc = std::popcount(mask);
      if (pc == 1) {
        int r = std::countr_zero(mask);
        dp[at(mask, r)] = 0;  // never read; leaves are handled via h == 0
        if (hom) hroot[mask] = static_cast<std::uint8_t>(r);
        continue;
      }
      // Peel the last child set sub from mask; the remainder keeps root r.
      for (std::uint32_t sub = (mask - 1) & mask; sub > 0;
           sub = (sub - 1) & mask) {
        std::uint32_t rest = mask ^ sub;
        if (rest == 0) continue;
        std::int64_t s = mask_size[sub];
        int subpc = std::popcount(sub);
        for (std::uint32_t rem = rest; rem != 0; rem &= rem - 1) {
          int r = std::countr_zero(rem);
          Time g = (rest == (1u << r))
                       ? model.gamma(r) * problem.block(r)
                       : dp[at(rest, r)];
          if (is_inf(g)) continue;
          if (hom) {
            Time h = subpc == 1 ? 0 : hbest[sub];
            Time cand = time_add(std::max(g, h), comm(hroot[sub], r, s));
            if (cand < dp[at(mask, r)]) {
              dp[at(mask, r)] = cand;
              peel[at(mask, r)] = PeelChoice{static_cast<std::uint16_t>(sub),
                                             hroot[sub]};
            }
          } else {
            for (std::uint32_t sm = sub; sm != 0; sm &= sm - 1) {
              int rp = std::countr_zero(sm);
              Time h = subpc == 1 ? 0 : dp[at(sub, rp)];
              Time cand = time_add(std::max(g, h), comm(rp, r, s));
              if (cand < dp[at(mask, r)]) {
                dp[at(mask, r)] = cand;
                peel[at(mask, r)] = PeelChoice{static_cast<std::uint16_t>(sub),
                                               static_cast<std::uint8_t>(rp)};
              }
            }
          }
        }
      }
      if (hom) {
        Time best = kInfTime;
        for (std::uint32_t rem = mask; rem != 0; rem &= rem - 1) {
          int r = std::countr_zero(rem);
          if (dp[at(mask, r)] < best) {
            best = dp[at(mask, r)];
            hroot[mask] = static_cast<std::uint8_t>(r);
          }
        }
        hbest[mask] = best;
      }
    }
  }

  TreePtr build(std::uint32_t mask, int r) const {
    std::vector<TreePtr> children;
    std::uint32_t cur = mask;
    while (cur != (1u << r)) {
      const PeelChoice& c = peel[at(cur, r)];
      std::uint32_t sub = c.sub;
      int rp = c.peer;
      children.push_back(std::popcount(sub) == 1 ? Tree::leaf(rp)
                                                 : build(sub, rp));
      cur ^= sub;
    }
    std::vector<TreeItem> items;
    items.reserve(children.size() + 1);
    items.push_back(TreeItem::copy_slot());
    for (auto it = children.rbegin(); it != children.rend(); ++it)
      items.push_back(TreeItem::of(*it));
    return Tree::node(r, std::move(items));
  }
};

}  // namespace

DpResult optimal_nonordered(const Problem& problem, const CostModel& model,
                            std::optional<int> root) {
  int p = problem.size();
  int cap = model.is_homogeneous() ? 13 : 11;
  if (p > cap)
    throw ResourceLimitError(
        "optimal_nonordered runs a 3^p subset DP and is capped at p <= " +
        std::to_string(cap) + " for this model (got p = " + std::to_string(p) +
        ")");
  if (root && (*root < 0 || *root >= p))
    throw ArgumentError("root out of range");
  if (model.rank_limit() > 0 && model.rank_limit() < p)
    throw ArgumentError("cost model covers fewer ranks than the problem");
  if (p == 1)
    return DpResult{model.gamma(0) * problem.block(0),
                    Tree::node(0, {TreeItem::copy_slot()})};

  NonorderedSolver solver{problem, model, p, (1u << p) - 1, {}, {}, {}};
  solver.solve();
  int best_root = root ? *root : 0;
  if (!root) {
    Time best = kInfTime;
    for (int r = 0; r < p; ++r)
      if (solver.dp[solver.at(solver.full, r)] < best) {
        best = solver.dp[solver.at(solver.full, r)];
        best_root = r;
      }
  }
  return DpResult{solver.dp[solver.at(solver.full, best_root)],
                  solver.build(solver.full, best_root)};
}

PartitionInstance build_partition_instance(
    const std::vector<std::int64_t>& values) {
  if (values.empty()) throw ArgumentError("empty PARTITION instance");
  std::int64_t m = 0;
  for (std::int64_t v : values) {
    if (v <= 0) throw ArgumentError("PARTITION values must be positive");
    m += v;
  }
  if (m % 2 != 0) throw ArgumentError("PARTITION instance sum must be even");
  for (std::int64_t v : values)
    if (v >= m / 2)
      throw ArgumentError("trivial PARTITION instance: a value is >= half "
                          "the total");
  std::int64_t p = static_cast<std::int64_t>(values.size());
  std::vector<std::int64_t> blocks;
  blocks.reserve(values.size() + 2);
  for (std::int64_t v : values) blocks.push_back(p * v + 1);
  blocks.push_back(p * m / 2);
  blocks.push_back(p * m / 2 + p);
  return PartitionInstance{Problem(std::move(blocks)),
                           CostModel::homogeneous(1, 1, 1),
                           2 * p * m + 2 * p + 2};
}

}  // namespace gst
