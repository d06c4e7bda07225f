#pragma once

#include <optional>

#include "gst/dp.hpp"
#include "gst/model.hpp"
#include "gst/tree.hpp"

namespace gst {

// Ground truth by enumeration of every ordered tree (all recursive
// contiguous-range partitions, all admissible roots, children in ascending
// rank order, the copy slot at every possible sequence position), each
// scored with evaluate(). Capped at p <= 8.
DpResult exhaustive_ordered(const Problem& problem, const CostModel& model,
                            std::optional<int> root);

// Same search restricted to trees with at most max_degree children per node
// (0 = unrestricted) and, optionally, to strictly strongly ordered trees
// (copy slot pinned at its rank position) — the class the binary DP uses.
DpResult exhaustive_ordered_filtered(const Problem& problem,
                                     const CostModel& model,
                                     std::optional<int> root, int max_degree,
                                     bool strong_only);

// Exact non-ordered optimum by subset-pair dynamic programming over
// processor sets; the copy is always placed first at each subtree root,
// which is dominant. Capped at p <= 13 homogeneous, p <= 11 otherwise.
DpResult optimal_nonordered(const Problem& problem, const CostModel& model,
                            std::optional<int> root);

struct PartitionInstance {
  Problem problem;
  CostModel model;
  Time threshold = 0;  // optimal non-ordered cost iff a partition exists
};

// Integer gather instance encoding a PARTITION question: blocks p*v_i + 1
// plus two large blocks p*m/2 and p*m/2 + p, alpha = beta = gamma = 1. The
// optimal non-ordered tree costs 2pm + 2p + 2 iff the values split into two
// equal-sum halves.
PartitionInstance build_partition_instance(
    const std::vector<std::int64_t>& values);

}  // namespace gst
