#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gst/model.hpp"

namespace gst {

// Block-size generators for the model experiments. Randomized kinds draw
// from mt19937_64 seeded with `seed`, with inclusive bounded draws by
// rejection, so the same (kind, p, b, rho, seed) always yields the same
// problem on any platform.
Problem gen_distribution(const std::string& kind, int p, std::int64_t b,
                         std::int64_t rho, std::uint64_t seed);

const std::vector<std::string>& distribution_kinds();

}  // namespace gst
