#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gst/model.hpp"

namespace gst {

struct Tree;
using TreePtr = std::shared_ptr<const Tree>;

// One entry in a node's operation sequence: either a child subtree or the
// node's own copy slot (child == nullptr). The copy slot is an explicit item
// because its position in the sequence is part of the cost semantics.
struct TreeItem {
  TreePtr child;
  bool is_copy() const { return child == nullptr; }
  static TreeItem copy_slot() { return TreeItem{nullptr}; }
  static TreeItem of(TreePtr t) { return TreeItem{std::move(t)}; }
};

// Immutable rooted tree node. Non-leaf nodes and the overall root carry
// exactly one copy slot; non-root leaves carry none and have no items.
struct Tree {
  int rank = 0;
  std::vector<TreeItem> items;

  static TreePtr leaf(int rank) {
    auto t = std::make_shared<Tree>();
    t->rank = rank;
    return t;
  }
  static TreePtr node(int rank, std::vector<TreeItem> items) {
    auto t = std::make_shared<Tree>();
    t->rank = rank;
    t->items = std::move(items);
    return t;
  }
  // New node with one more child appended to the sequence.
  static TreePtr append(const TreePtr& base, TreePtr child) {
    auto t = std::make_shared<Tree>(*base);
    t->items.push_back(TreeItem::of(std::move(child)));
    return TreePtr(std::move(t));
  }
};

// Structural checks: rank coverage {0..p-1}, uniqueness, copy slot
// multiplicity. Returns all violations; empty means ok.
std::vector<std::string> validate_tree(const Tree& tree, int p);

// Completion time of the tree: left-to-right fold over each node's items.
// Appending a child costs max(acc, cost(child)) + comm(child_root, rank,
// size(child)); the copy slot costs gamma_rank * m_rank, serial.
Time evaluate(const Tree& tree, const Problem& problem, const CostModel& model);

struct Ordering {
  bool strong = false;
  bool weak = false;
};

// weak: every subtree spans a contiguous rank range. strong: additionally
// each node's parts (children plus the copy slot as the singleton {rank})
// are sequenced in adjacent ascending rank order.
Ordering check_ordering(const Tree& tree, int p);

enum class Direction { gather, scatter };

struct ScheduleEvent {
  int index = 0;
  bool is_copy = false;
  int sender = 0;    // == receiver == rank for copy events
  int receiver = 0;
  std::int64_t size = 0;
  Time start = 0;
  Time end = 0;
};

struct Schedule {
  Direction direction = Direction::gather;
  std::vector<ScheduleEvent> events;
  Time makespan = 0;
};

// Timed replay of the tree. Gather receives children in sequence order;
// scatter sends to them in reverse sequence order. Both makespans equal
// evaluate(tree). Zero-size transfers produce no event.
Schedule extract_schedule(const Tree& tree, const Problem& problem,
                          const CostModel& model, Direction direction);

std::string schedule_to_csv(const Schedule& schedule);

// Tree JSON: {"rank":int,"items":[{"child":<tree>}|{"copy":true},...]}.
std::string tree_to_json(const Tree& tree);
TreePtr tree_from_json(const std::string& text);
TreePtr load_tree(const std::string& path);

// DOT export: one node per rank labeled "rank (m_i)", edges labeled with the
// transmitted segment size, sequence position in attribute "seq".
std::string tree_to_dot(const Tree& tree, const Problem& problem);

// Ranks appearing in the tree, and number of children (copy slot excluded).
std::vector<int> tree_ranks(const Tree& tree);
int root_degree(const Tree& tree);
std::int64_t subtree_size(const Tree& tree, const Problem& problem);

}  // namespace gst
