#pragma once

#include <optional>

#include "gst/model.hpp"
#include "gst/tree.hpp"

namespace gst {

// Star tree: root does its copy first, then receives one leaf child per
// other processor in ascending virtual rank (root+1, root+2, ... mod p).
TreePtr linear_star(const Problem& problem, int root);

// Problem-oblivious binomial tree over virtual ranks v = (i - root) mod p,
// parent(v) = v with its lowest set bit cleared, children received
// smallest-subtree-first, copy slot first at every non-leaf.
TreePtr binomial_oblivious(const Problem& problem, int root);

// Problem-adaptive binomial tree: round-based pairing of adjacent rank
// groups of doubling size; in each pair the group with less data sends to
// the group with more data (ties: lower-rank group receives; the group
// holding a fixed root always receives). Odd trailing group passes to the
// next round unpaired. Homogeneous models only.
TreePtr adaptive_binomial(const Problem& problem, const CostModel& model,
                          std::optional<int> root);

// Two concurrent trees: an adaptive binomial tree over all ranks except
// large_rank, whose root sends once to large_rank; large_rank's copy slot is
// placed first so the copy overlaps the other tree's completion.
TreePtr two_tree(const Problem& problem, const CostModel& model,
                 int large_rank);

}  // namespace gst
