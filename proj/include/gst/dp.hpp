#pragma once

#include <optional>

#include "gst/model.hpp"
#include "gst/tree.hpp"

namespace gst {

struct DpResult {
  Time cost = 0;
  TreePtr tree;
};

// Optimal strongly ordered variable-degree tree, homogeneous model,
// O(p^3) time and O(p^2) space. root == nullopt picks a best root.
DpResult optimal_ordered_hom(const Problem& problem, const CostModel& model,
                             std::optional<int> root);

// General (non-homogeneous) variant with per-root tables. Also accepts a
// homogeneous model, in which case it must agree with optimal_ordered_hom.
DpResult optimal_ordered_nonhom(const Problem& problem, const CostModel& model,
                                std::optional<int> root);

// Optimal strongly ordered tree with at most two children per node
// (copy slots excluded from the degree).
DpResult optimal_binary_ordered(const Problem& problem, const CostModel& model,
                                std::optional<int> root);

// Broadcast/reduction variant: same recurrences with every transmitted
// segment of size m. A single processor has nothing to do (cost 0).
DpResult optimal_broadcast_ordered(int p, std::int64_t m,
                                   const CostModel& model,
                                   std::optional<int> root);

// Completion time of a broadcast tree under the constant-segment semantics;
// certificate counterpart of evaluate() for optimal_broadcast_ordered.
Time broadcast_evaluate(const Tree& tree, int p, std::int64_t m,
                        const CostModel& model);

}  // namespace gst
