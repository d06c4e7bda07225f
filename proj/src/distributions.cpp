#include "gst/distributions.hpp"

#include <algorithm>
#include <random>

namespace gst {

namespace {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  // Inclusive bounds; modulo with rejection keeps the mapping engine-stable
  // across standard library implementations.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t range = hi - lo + 1;
    std::uint64_t limit = range * (UINT64_MAX / range);
    std::uint64_t x;
    do {
      x = eng();
    } while (x >= limit);
    return lo + x % range;
  }
};

}  // namespace

const std::vector<std::string>& distribution_kinds() {
  static const std::vector<std::string> kinds = {
      "same",       "random",      "random_dec", "random_inc",
      "bucket",     "spikes",      "decreasing", "increasing",
      "alternating", "skewed",     "two_blocks"};
  return kinds;
}

Problem gen_distribution(const std::string& kind, int p, std::int64_t b,
                         std::int64_t rho, std::uint64_t seed) {
  if (p < 1) throw ArgumentError("p must be at least 1");
  if (b < 1) throw ArgumentError("b must be at least 1");
  if (rho < 1) throw ArgumentError("rho must be at least 1");
  std::vector<std::int64_t> m(static_cast<size_t>(p));
  Rng rng(seed);

  if (kind == "same") {
    for (auto& v : m) v = b;
  } else if (kind == "random" || kind == "random_dec" || kind == "random_inc") {
    for (auto& v : m)
      v = static_cast<std::int64_t>(rng.uniform(1, static_cast<std::uint64_t>(2 * b)));
    if (kind == "random_dec") std::sort(m.begin(), m.end(), std::greater<>());
    if (kind == "random_inc") std::sort(m.begin(), m.end());
  } else if (kind == "bucket") {
    for (auto& v : m)
      v = (b + 1) / 2 +
          static_cast<std::int64_t>(rng.uniform(1, static_cast<std::uint64_t>(b)));
  } else if (kind == "spikes") {
    for (auto& v : m)
      v = rng.uniform(0, static_cast<std::uint64_t>(rho) - 1) == 0 ? rho * b : 1;
  } else if (kind == "decreasing") {
    for (int i = 0; i < p; ++i)
      m[static_cast<size_t>(i)] = (2 * b * (p - i)) / p + 1;
  } else if (kind == "increasing") {
    for (int i = 0; i < p; ++i)
      m[static_cast<size_t>(i)] = (2 * b * (i + 1)) / p + 1;
  } else if (kind == "alternating") {
    for (int i = 0; i < p; ++i)
      m[static_cast<size_t>(i)] = i % 2 == 0 ? b + b / 2 : b - b / 2;
  } else if (kind == "skewed") {
    for (int i = 0; i < p; ++i)
      m[static_cast<size_t>(i)] = i < rho ? (p * b) / rho : 1;
  } else if (kind == "two_blocks") {
    std::fill(m.begin(), m.end(), 0);
    m.front() = p * b / 2;
    m.back() = p * b / 2;
  } else {
    throw ArgumentError("unknown distribution kind: " + kind);
  }
  return Problem(std::move(m));
}

}  // namespace gst
