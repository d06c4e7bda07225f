#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gst {

// Abstract time unit. Latency alpha, per-unit time beta*m, and copy time
// gamma*m all live on the same integer scale so table values reproduce
// bit-exactly.
using Time = std::int64_t;

// Saturating sentinel for unreachable pairs (alpha_ij = inf). Kept well below
// int64 max so sums of sentinels cannot wrap.
inline constexpr Time kInfTime = std::numeric_limits<Time>::max() / 4;

constexpr bool is_inf(Time t) { return t >= kInfTime; }

constexpr Time time_add(Time a, Time b) {
  if (is_inf(a) || is_inf(b)) return kInfTime;
  Time r = a + b;
  return r >= kInfTime ? kInfTime : r;
}

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A gather/scatter instance: per-processor block sizes m_i and their prefix
// sums, so any contiguous segment size is a constant-time lookup.
class Problem {
 public:
  explicit Problem(std::vector<std::int64_t> blocks);

  int size() const { return static_cast<int>(blocks_.size()); }
  std::int64_t block(int i) const { return blocks_.at(static_cast<size_t>(i)); }
  std::int64_t total() const { return prefix_.back(); }
  const std::vector<std::int64_t>& blocks() const { return blocks_; }
  const std::vector<std::int64_t>& prefix() const { return prefix_; }

  // prefix[j+1] - prefix[i]; requires 0 <= i <= j < p.
  std::int64_t segment(int i, int j) const;

 private:
  std::vector<std::int64_t> blocks_;
  std::vector<std::int64_t> prefix_;
};

// Homogeneous (alpha, beta, gamma) or non-homogeneous (per-pair matrices)
// linear transmission cost parameters. Diagonal matrix entries are unused.
class CostModel {
 public:
  static CostModel homogeneous(Time alpha, Time beta, Time gamma);
  static CostModel non_homogeneous(std::vector<std::vector<Time>> alpha,
                                   std::vector<std::vector<Time>> beta,
                                   std::vector<Time> gamma);

  bool is_homogeneous() const { return homogeneous_; }
  // Number of ranks the model constrains, or 0 for a homogeneous model.
  int rank_limit() const { return dim_; }

  Time alpha(int sender, int receiver) const;
  Time beta(int sender, int receiver) const;
  Time gamma(int rank) const;

  Time hom_alpha() const { return hom_alpha_; }
  Time hom_beta() const { return hom_beta_; }
  Time hom_gamma() const { return hom_gamma_; }

  // Restriction of a homogeneous model to matrix form (for code paths that
  // only handle the general case).
  CostModel expanded(int p) const;

  // Warnings for parameter combinations the cost semantics tolerate but that
  // make little sense, e.g. gamma_i > beta_ij (copying slower than sending).
  std::vector<std::string> validate(int p) const;

 private:
  CostModel() = default;
  bool homogeneous_ = true;
  int dim_ = 0;
  Time hom_alpha_ = 0, hom_beta_ = 0, hom_gamma_ = 0;
  std::vector<std::vector<Time>> alpha_, beta_;
  std::vector<Time> gamma_;
};

// alpha_sr + beta_sr * size, or 0 when size == 0 (no communication when no
// data). Throws ArgumentError on sender == receiver or out-of-range ranks.
Time comm_cost(const CostModel& model, int sender, int receiver,
               std::int64_t size);

// Sum of blocks i..j via prefix sums.
std::int64_t segment_size(const Problem& problem, int i, int j);

// JSON I/O. Problem files are {"p": int, "blocks": [int,...]}; cost model
// files are {"kind":"hom",...} or {"kind":"nonhom",...} with "inf" accepted
// for alpha entries.
Problem problem_from_json(const std::string& text);
std::string problem_to_json(const Problem& problem,
                            const std::string& meta = "");
CostModel model_from_json(const std::string& text);
std::string model_to_json(const CostModel& model);

Problem load_problem(const std::string& path);
CostModel load_model(const std::string& path);

}  // namespace gst
