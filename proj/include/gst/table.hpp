#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gst/model.hpp"

namespace gst {

struct TableParams {
  int p = 2000;
  std::int64_t b = 1000;
  std::int64_t rho = 5;
  Time alpha = 100;
  Time beta = 1;
  Time gamma = 1;
  int root = 1000;
  std::uint64_t seed = 1;
  bool with_gamma_zero = false;  // append a second block with gamma = 0
  int max_dp_p = 4096;           // resource guard for the DP columns
};

struct TableCell {
  Time cost = 0;
  int root = 0;
};

struct TableRow {
  std::string kind;
  Time gamma = 0;
  std::string mode;  // "fixed" or "free"
  std::int64_t m = 0;
  TableCell linear, binary, oblivious, adaptive, optimal;
  std::string marker;  // "deterministic" or "seed-local"
};

// One fixed-root and one best-root row per distribution, mirroring the
// paper-style completion time tables. Every cell is the direct output of the
// corresponding builder or DP, certified by re-evaluating the tree.
std::vector<TableRow> run_table(const TableParams& params);

std::string table_to_csv(const std::vector<TableRow>& rows);

}  // namespace gst
