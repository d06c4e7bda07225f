#include "gst/builders.hpp"

#include <algorithm>
#include <deque>
#include <vector>

namespace gst {

namespace {

void check_root(const Problem& problem, int root) {
  if (root < 0 || root >= problem.size())
    throw ArgumentError("root " + std::to_string(root) + " out of range");
}

}  // namespace

TreePtr linear_star(const Problem& problem, int root) {
  check_root(problem, root);
  int p = problem.size();
  std::vector<TreeItem> items;
  items.reserve(static_cast<size_t>(p));
  items.push_back(TreeItem::copy_slot());
  for (int v = 1; v < p; ++v)
    items.push_back(TreeItem::of(Tree::leaf((root + v) % p)));
  return Tree::node(root, std::move(items));
}

namespace {

// Children of virtual rank v are v + 2^k for 2^k < lowbit(v) (the whole
// virtual range for v = 0), each spanning [v + 2^k, v + 2^{k+1}).
TreePtr binomial_node(int v, std::int64_t reach, int root, int p) {
  std::vector<TreeItem> children;
  for (std::int64_t step = 1; step < reach && v + step < p; step <<= 1)
    children.push_back(
        TreeItem::of(binomial_node(v + static_cast<int>(step), step, root, p)));
  int rank = (v + root) % p;
  if (children.empty()) return Tree::leaf(rank);
  std::vector<TreeItem> items;
  items.push_back(TreeItem::copy_slot());
  for (auto& c : children) items.push_back(std::move(c));
  return Tree::node(rank, std::move(items));
}

}  // namespace

TreePtr binomial_oblivious(const Problem& problem, int root) {
  check_root(problem, root);
  int p = problem.size();
  if (p == 1) return Tree::node(root, {TreeItem::copy_slot()});
  std::int64_t reach = 1;
  while (reach < p) reach <<= 1;
  return binomial_node(0, reach, root, p);
}

namespace {

struct Group {
  int lo, hi;          // rank range [lo..hi]
  TreePtr tree;        // root's accumulated node, or leaf if never received
  std::int64_t data;
  bool has_copy;       // copy slot already placed at the root
};

// Receiver keeps its root; the sender's whole tree is appended as the next
// child. A first-time receiver places its copy slot ahead of the child.
Group merge(Group recv, Group send) {
  TreePtr base = recv.tree;
  if (!recv.has_copy) {
    base = Tree::node(base->rank, {TreeItem::copy_slot()});
    recv.has_copy = true;
  }
  recv.tree = Tree::append(base, send.tree);
  recv.lo = std::min(recv.lo, send.lo);
  recv.hi = std::max(recv.hi, send.hi);
  recv.data += send.data;
  return recv;
}

TreePtr adaptive_over(const std::vector<int>& ranks, const Problem& problem,
                      std::optional<int> fixed_root) {
  std::vector<Group> groups;
  groups.reserve(ranks.size());
  for (int r : ranks)
    groups.push_back(Group{r, r, Tree::leaf(r), problem.block(r), false});

  while (groups.size() > 1) {
    std::vector<Group> next;
    next.reserve(groups.size() / 2 + 1);
    for (size_t g = 0; g + 1 < groups.size(); g += 2) {
      Group& a = groups[g];
      Group& b = groups[g + 1];
      bool a_receives;
      if (fixed_root && a.lo <= *fixed_root && *fixed_root <= a.hi)
        a_receives = true;
      else if (fixed_root && b.lo <= *fixed_root && *fixed_root <= b.hi)
        a_receives = false;
      else if (a.data != b.data)
        a_receives = a.data > b.data;
      else
        a_receives = true;  // tie: lower-rank group receives
      next.push_back(a_receives ? merge(a, b) : merge(b, a));
    }
    if (groups.size() % 2 == 1) next.push_back(groups.back());
    groups = std::move(next);
  }

  Group& g = groups.front();
  if (!g.has_copy)
    return Tree::node(g.tree->rank, {TreeItem::copy_slot()});
  return g.tree;
}

}  // namespace

TreePtr adaptive_binomial(const Problem& problem, const CostModel& model,
                          std::optional<int> root) {
  if (!model.is_homogeneous())
    throw UnsupportedError("adaptive_binomial needs a homogeneous model");
  if (root) check_root(problem, *root);
  std::vector<int> ranks(static_cast<size_t>(problem.size()));
  for (int i = 0; i < problem.size(); ++i) ranks[static_cast<size_t>(i)] = i;
  return adaptive_over(ranks, problem, root);
}

TreePtr two_tree(const Problem& problem, const CostModel& model,
                 int large_rank) {
  if (!model.is_homogeneous())
    throw UnsupportedError("two_tree needs a homogeneous model");
  check_root(problem, large_rank);
  if (problem.size() == 1)
    return Tree::node(large_rank, {TreeItem::copy_slot()});
  std::vector<int> others;
  others.reserve(static_cast<size_t>(problem.size()) - 1);
  for (int i = 0; i < problem.size(); ++i)
    if (i != large_rank) others.push_back(i);
  TreePtr rest = adaptive_over(others, problem, std::nullopt);
  return Tree::node(large_rank,
                    {TreeItem::copy_slot(), TreeItem::of(std::move(rest))});
}

}  // namespace gst
