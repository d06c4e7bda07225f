#include "gst/tree.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace gst {

namespace {

void collect_ranks(const Tree& t, std::vector<int>& out) {
  out.push_back(t.rank);
  for (const auto& item : t.items)
    if (!item.is_copy()) collect_ranks(*item.child, out);
}

void validate_node(const Tree& t, bool is_root, std::vector<std::string>& out) {
  int copies = 0;
  int children = 0;
  for (const auto& item : t.items) {
    if (item.is_copy())
      ++copies;
    else
      ++children;
  }
  bool needs_copy = is_root || children > 0;
  if (needs_copy && copies != 1)
    out.push_back("rank " + std::to_string(t.rank) +
                  (copies == 0 ? ": missing copy slot" : ": multiple copy slots"));
  if (!needs_copy && copies != 0)
    out.push_back("rank " + std::to_string(t.rank) + ": leaf with copy slot");
  for (const auto& item : t.items)
    if (!item.is_copy()) validate_node(*item.child, false, out);
}

}  // namespace

std::vector<int> tree_ranks(const Tree& tree) {
  std::vector<int> ranks;
  collect_ranks(tree, ranks);
  return ranks;
}

int root_degree(const Tree& tree) {
  int d = 0;
  for (const auto& item : tree.items)
    if (!item.is_copy()) ++d;
  return d;
}

std::int64_t subtree_size(const Tree& tree, const Problem& problem) {
  std::int64_t s = problem.block(tree.rank);
  for (const auto& item : tree.items)
    if (!item.is_copy()) s += subtree_size(*item.child, problem);
  return s;
}

std::vector<std::string> validate_tree(const Tree& tree, int p) {
  std::vector<std::string> violations;
  std::vector<int> ranks = tree_ranks(tree);
  std::vector<char> seen(static_cast<size_t>(std::max(p, 1)), 0);
  for (int r : ranks) {
    if (r < 0 || r >= p) {
      violations.push_back("rank " + std::to_string(r) + " out of range");
      continue;
    }
    if (seen[static_cast<size_t>(r)])
      violations.push_back("rank " + std::to_string(r) + " appears twice");
    seen[static_cast<size_t>(r)] = 1;
  }
  for (int r = 0; r < p; ++r)
    if (!seen[static_cast<size_t>(r)])
      violations.push_back("rank " + std::to_string(r) + " absent");
  validate_node(tree, true, violations);
  return violations;
}

namespace {

struct EvalResult {
  Time cost = 0;
  std::int64_t size = 0;
};

EvalResult evaluate_node(const Tree& t, const Problem& problem,
                         const CostModel& model, bool is_root) {
  if (t.rank < 0 || t.rank >= problem.size())
    throw ArgumentError("tree rank " + std::to_string(t.rank) +
                        " outside the problem");
  int copies = 0, children = 0;
  for (const auto& item : t.items) item.is_copy() ? ++copies : ++children;
  bool needs_copy = is_root || children > 0;
  if ((needs_copy && copies != 1) || (!needs_copy && copies != 0))
    throw StructureError("copy slot rule violated at rank " +
                         std::to_string(t.rank));

  EvalResult r;
  r.size = problem.block(t.rank);
  for (const auto& item : t.items) {
    if (item.is_copy()) {
      r.cost = time_add(r.cost, model.gamma(t.rank) * problem.block(t.rank));
      continue;
    }
    EvalResult child = evaluate_node(*item.child, problem, model, false);
    // Zero-size subtrees still synchronize but transmit nothing.
    Time w = comm_cost(model, item.child->rank, t.rank, child.size);
    r.cost = time_add(std::max(r.cost, child.cost), w);
    r.size += child.size;
  }
  return r;
}

}  // namespace

Time evaluate(const Tree& tree, const Problem& problem, const CostModel& model) {
  return evaluate_node(tree, problem, model, true).cost;
}

namespace {

struct Span {
  int lo = 0, hi = 0, count = 0;
  bool contiguous() const { return hi - lo + 1 == count; }
};

Span ordering_scan(const Tree& t, bool& weak, bool& strong) {
  Span span{t.rank, t.rank, 1};
  std::vector<Span> parts;
  parts.reserve(t.items.size());
  for (const auto& item : t.items) {
    if (item.is_copy()) {
      parts.push_back(Span{t.rank, t.rank, 1});
      continue;
    }
    Span c = ordering_scan(*item.child, weak, strong);
    parts.push_back(c);
    span.lo = std::min(span.lo, c.lo);
    span.hi = std::max(span.hi, c.hi);
    span.count += c.count;
  }
  if (!span.contiguous()) {
    weak = false;
    strong = false;
    return span;
  }
  // Definition of strong ordering: the last processor of each part is ranked
  // immediately before the first processor of the next part.
  if (!parts.empty()) {
    if (parts.front().lo != span.lo || parts.back().hi != span.hi)
      strong = false;
    for (size_t k = 0; k + 1 < parts.size(); ++k)
      if (parts[k].hi + 1 != parts[k + 1].lo) strong = false;
    for (const Span& c : parts)
      if (!c.contiguous()) strong = false;
  }
  return span;
}

}  // namespace

Ordering check_ordering(const Tree& tree, int p) {
  auto violations = validate_tree(tree, p);
  if (!violations.empty())
    throw StructureError("check_ordering on invalid tree: " + violations.front());
  bool weak = true, strong = true;
  ordering_scan(tree, weak, strong);
  if (!weak) strong = false;
  return Ordering{strong, weak};
}

namespace {

struct Replayer {
  const Problem& problem;
  const CostModel& model;
  Schedule out;

  void push(bool is_copy, int sender, int receiver, std::int64_t size,
            Time start, Time end) {
    if (size == 0) return;
    ScheduleEvent e;
    e.index = static_cast<int>(out.events.size());
    e.is_copy = is_copy;
    e.sender = sender;
    e.receiver = receiver;
    e.size = size;
    e.start = start;
    e.end = end;
    out.events.push_back(e);
  }

  // Returns (completion time, size) of the node, all processors starting at 0.
  EvalResult gather(const Tree& t) {
    EvalResult r;
    r.size = problem.block(t.rank);
    for (const auto& item : t.items) {
      if (item.is_copy()) {
        Time d = model.gamma(t.rank) * problem.block(t.rank);
        push(true, t.rank, t.rank, problem.block(t.rank), r.cost,
             time_add(r.cost, d));
        r.cost = time_add(r.cost, d);
        continue;
      }
      EvalResult child = gather(*item.child);
      Time w = comm_cost(model, item.child->rank, t.rank, child.size);
      Time start = std::max(r.cost, child.cost);
      if (child.size > 0)
        push(false, item.child->rank, t.rank, child.size, start,
             time_add(start, w));
      r.cost = time_add(start, w);
      r.size += child.size;
    }
    return r;
  }

  std::int64_t size_of(const Tree& t) {
    return subtree_size(t, problem);
  }

  // The root serves its sequence in reverse: the last subtree's segment is
  // sent first, then the node recurses on the remaining prefix.
  Time scatter(const Tree& t, Time ready) {
    Time clock = ready;
    Time makespan = ready;
    for (auto it = t.items.rbegin(); it != t.items.rend(); ++it) {
      if (it->is_copy()) {
        Time d = model.gamma(t.rank) * problem.block(t.rank);
        push(true, t.rank, t.rank, problem.block(t.rank), clock,
             time_add(clock, d));
        clock = time_add(clock, d);
        makespan = std::max(makespan, clock);
        continue;
      }
      std::int64_t sz = size_of(*it->child);
      Time w = comm_cost(model, t.rank, it->child->rank, sz);
      if (sz > 0)
        push(false, t.rank, it->child->rank, sz, clock, time_add(clock, w));
      clock = time_add(clock, w);
      makespan = std::max(makespan, scatter(*it->child, clock));
    }
    return makespan;
  }
};

}  // namespace

Schedule extract_schedule(const Tree& tree, const Problem& problem,
                          const CostModel& model, Direction direction) {
  auto violations = validate_tree(tree, problem.size());
  if (!violations.empty())
    throw StructureError("extract_schedule on invalid tree: " +
                         violations.front());
  Replayer rp{problem, model, Schedule{}};
  rp.out.direction = direction;
  if (direction == Direction::gather) {
    rp.out.makespan = rp.gather(tree).cost;
  } else {
    rp.out.makespan = rp.scatter(tree, 0);
  }
  return rp.out;
}

std::string schedule_to_csv(const Schedule& schedule) {
  std::ostringstream ss;
  ss << "index,sender,receiver,size,start,end,kind\n";
  for (const auto& e : schedule.events) {
    ss << e.index << ',' << e.sender << ',' << e.receiver << ',' << e.size
       << ',' << e.start << ',' << e.end << ','
       << (e.is_copy ? "copy" : "comm") << '\n';
  }
  return ss.str();
}

namespace {

using nlohmann::json;

json node_to_json(const Tree& t) {
  json j;
  j["rank"] = t.rank;
  json items = json::array();
  for (const auto& item : t.items) {
    if (item.is_copy())
      items.push_back(json{{"copy", true}});
    else
      items.push_back(json{{"child", node_to_json(*item.child)}});
  }
  j["items"] = items;
  return j;
}

TreePtr node_from_json(const json& j) {
  int rank = j.at("rank").get<int>();
  std::vector<TreeItem> items;
  for (const auto& item : j.value("items", json::array())) {
    if (item.contains("copy"))
      items.push_back(TreeItem::copy_slot());
    else
      items.push_back(TreeItem::of(node_from_json(item.at("child"))));
  }
  return Tree::node(rank, std::move(items));
}

void dot_node(const Tree& t, const Problem& problem, std::ostringstream& ss) {
  ss << "  n" << t.rank << " [label=\"" << t.rank << " ("
     << problem.block(t.rank) << ")\"];\n";
  int seq = 0;
  for (const auto& item : t.items) {
    if (!item.is_copy()) {
      ss << "  n" << t.rank << " -> n" << item.child->rank << " [label=\""
         << subtree_size(*item.child, problem) << "\", seq=" << seq << "];\n";
      dot_node(*item.child, problem, ss);
    }
    ++seq;
  }
}

}  // namespace

std::string tree_to_json(const Tree& tree) {
  return node_to_json(tree).dump(2) + "\n";
}

TreePtr tree_from_json(const std::string& text) {
  return node_from_json(json::parse(text));
}

TreePtr load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return tree_from_json(ss.str());
}

std::string tree_to_dot(const Tree& tree, const Problem& problem) {
  std::ostringstream ss;
  ss << "digraph gstree {\n";
  dot_node(tree, problem, ss);
  ss << "}\n";
  return ss.str();
}

}  // namespace gst
