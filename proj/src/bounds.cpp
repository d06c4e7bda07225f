#include "gst/bounds.hpp"

#include <algorithm>
#include <bit>
#include <vector>

namespace gst {

namespace {

void check_root(const Problem& problem, int root) {
  if (root < 0 || root >= problem.size())
    throw ArgumentError("root " + std::to_string(root) + " out of range");
}

void need_homogeneous(const CostModel& model, const char* what) {
  if (!model.is_homogeneous())
    throw UnsupportedError(std::string(what) + " needs a homogeneous model");
}

// Smallest capacity C such that the items pack into at most k bins, found by
// binary search over C with a subset DP feasibility check. Items are filled
// in a canonical order (lowest remaining index first), which loses nothing.
std::int64_t min_max_partition(const std::vector<std::int64_t>& items, int k) {
  int n = static_cast<int>(items.size());
  std::int64_t total = 0, biggest = 0;
  for (auto w : items) {
    total += w;
    biggest = std::max(biggest, w);
  }
  if (n == 0) return 0;
  if (k >= n) return biggest;

  auto fits = [&](std::int64_t cap) {
    struct State {
      int bins;
      std::int64_t load;
    };
    size_t full = (size_t{1} << n) - 1;
    std::vector<State> dp(full + 1, State{n + 1, 0});
    dp[0] = State{1, 0};
    for (size_t mask = 0; mask < full; ++mask) {
      if (dp[mask].bins > k) continue;
      int x = std::countr_zero(~mask);
      size_t next = mask | (size_t{1} << x);
      State cand;
      if (dp[mask].load + items[static_cast<size_t>(x)] <= cap)
        cand = State{dp[mask].bins, dp[mask].load + items[static_cast<size_t>(x)]};
      else
        cand = State{dp[mask].bins + 1, items[static_cast<size_t>(x)]};
      if (cand.bins < dp[next].bins ||
          (cand.bins == dp[next].bins && cand.load < dp[next].load))
        dp[next] = cand;
    }
    return dp[full].bins <= k;
  };

  std::int64_t lo = std::max(biggest, (total + k - 1) / k);
  std::int64_t hi = total;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (fits(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace

Time lb_one_ported(const Problem& problem, const CostModel& model, int root) {
  check_root(problem, root);
  std::int64_t rest = problem.total() - problem.block(root);
  Time copy = model.gamma(root) * problem.block(root);
  if (rest == 0) return copy;
  if (model.is_homogeneous())
    return time_add(time_add(model.hom_alpha(), model.hom_beta() * rest), copy);
  Time best = kInfTime;
  int p = std::max(problem.size(), model.rank_limit());
  for (int j = 0; j < p; ++j) {
    if (j == root) continue;
    Time a = model.alpha(root, j);
    if (is_inf(a)) continue;
    best = std::min(best, time_add(a, model.beta(root, j) * rest));
  }
  return time_add(best, copy);
}

Time lb_k_ported_splittable(const Problem& problem, const CostModel& model,
                            int root, int k) {
  need_homogeneous(model, "lb_k_ported_splittable");
  check_root(problem, root);
  if (k < 1) throw ArgumentError("k must be at least 1");
  std::int64_t rest = problem.total() - problem.block(root);
  Time copy = model.hom_gamma() * problem.block(root);
  if (rest == 0) return copy;
  std::int64_t per_port = (rest + k - 1) / k;
  return time_add(time_add(model.hom_alpha(), model.hom_beta() * per_port),
                  copy);
}

Time lb_k_ported_partition(const Problem& problem, const CostModel& model,
                           int root, int k) {
  need_homogeneous(model, "lb_k_ported_partition");
  check_root(problem, root);
  if (k < 1) throw ArgumentError("k must be at least 1");
  if (problem.size() - 1 > 20)
    throw ResourceLimitError(
        "lb_k_ported_partition solves an exact min-max partition and is "
        "capped at p - 1 <= 20");
  std::vector<std::int64_t> items;
  for (int i = 0; i < problem.size(); ++i)
    if (i != root && problem.block(i) > 0) items.push_back(problem.block(i));
  Time copy = model.hom_gamma() * problem.block(root);
  if (items.empty()) return copy;
  std::int64_t load = min_max_partition(items, k);
  return time_add(time_add(model.hom_alpha(), model.hom_beta() * load), copy);
}

}  // namespace gst
