#pragma once

#include "gst/model.hpp"

namespace gst {

// alpha + beta * (m - m_r) + gamma * m_r for homogeneous models; the
// non-homogeneous bound takes the fastest reachable neighbor of the root.
// No communication term when the other processors hold no data.
Time lb_one_ported(const Problem& problem, const CostModel& model, int root);

// k-ported bound assuming blocks can be split arbitrarily:
// alpha + beta * ceil((m - m_r) / k) + gamma * m_r. Homogeneous only.
Time lb_k_ported_splittable(const Problem& problem, const CostModel& model,
                            int root, int k);

// k-ported bound with indivisible blocks: alpha + beta * (best min-max
// k-partition of the other blocks) + gamma * m_r, by exact search.
// Capped at p - 1 <= 20 items.
Time lb_k_ported_partition(const Problem& problem, const CostModel& model,
                           int root, int k);

}  // namespace gst
