#include "gst/table.hpp"

#include <sstream>

#include "gst/builders.hpp"
#include "gst/distributions.hpp"
#include "gst/dp.hpp"
#include "gst/tree.hpp"

namespace gst {

namespace {

bool randomized_kind(const std::string& kind) {
  return kind == "random" || kind == "random_dec" || kind == "random_inc" ||
         kind == "bucket" || kind == "spikes";
}

Time certified(const TreePtr& tree, const Problem& problem,
               const CostModel& model) {
  return evaluate(*tree, problem, model);
}

TableCell best_root_linear(const Problem& problem, const CostModel& model) {
  // cost(r) = gamma * m_r + sum_{i != r} comm(m_i); scan roots in O(p).
  Time total = 0;
  for (int i = 0; i < problem.size(); ++i)
    total = time_add(total,
                     problem.block(i) > 0
                         ? time_add(model.hom_alpha(),
                                    model.hom_beta() * problem.block(i))
                         : 0);
  Time best = kInfTime;
  int best_root = 0;
  for (int r = 0; r < problem.size(); ++r) {
    Time own = problem.block(r) > 0
                   ? time_add(model.hom_alpha(),
                              model.hom_beta() * problem.block(r))
                   : 0;
    Time cand = time_add(model.hom_gamma() * problem.block(r), total - own);
    if (cand < best) {
      best = cand;
      best_root = r;
    }
  }
  TreePtr tree = linear_star(problem, best_root);
  return TableCell{certified(tree, problem, model), best_root};
}

TableCell best_root_oblivious(const Problem& problem, const CostModel& model) {
  Time best = kInfTime;
  int best_root = 0;
  for (int r = 0; r < problem.size(); ++r) {
    Time c = evaluate(*binomial_oblivious(problem, r), problem, model);
    if (c < best) {
      best = c;
      best_root = r;
    }
  }
  return TableCell{best, best_root};
}

}  // namespace

std::vector<TableRow> run_table(const TableParams& params) {
  if (params.p < 1) throw ArgumentError("p must be at least 1");
  if (params.root < 0 || params.root >= params.p)
    throw ArgumentError("root out of range");
  if (params.p > params.max_dp_p)
    throw ResourceLimitError(
        "table run needs the Binary/Optimal DP at p = " +
        std::to_string(params.p) + ", above the ceiling " +
        std::to_string(params.max_dp_p) + " (raise --max-dp-p to override)");

  std::vector<Time> gammas = {params.gamma};
  if (params.with_gamma_zero) gammas.push_back(0);

  std::vector<TableRow> rows;
  for (Time gamma : gammas) {
    CostModel model = CostModel::homogeneous(params.alpha, params.beta, gamma);
    for (const auto& kind : distribution_kinds()) {
      Problem problem =
          gen_distribution(kind, params.p, params.b, params.rho, params.seed);
      std::string marker =
          randomized_kind(kind) ? "seed-local" : "deterministic";

      TableRow fixed;
      fixed.kind = kind;
      fixed.gamma = gamma;
      fixed.mode = "fixed";
      fixed.m = problem.total();
      fixed.marker = marker;
      fixed.linear = TableCell{
          certified(linear_star(problem, params.root), problem, model),
          params.root};
      fixed.oblivious = TableCell{
          certified(binomial_oblivious(problem, params.root), problem, model),
          params.root};
      fixed.adaptive = TableCell{
          certified(adaptive_binomial(problem, model, params.root), problem,
                    model),
          params.root};
      {
        DpResult r = optimal_binary_ordered(problem, model, params.root);
        fixed.binary = TableCell{r.cost, params.root};
      }
      {
        DpResult r = optimal_ordered_hom(problem, model, params.root);
        fixed.optimal = TableCell{r.cost, params.root};
      }
      rows.push_back(fixed);

      TableRow free = fixed;
      free.mode = "free";
      free.linear = best_root_linear(problem, model);
      free.oblivious = best_root_oblivious(problem, model);
      {
        TreePtr t = adaptive_binomial(problem, model, std::nullopt);
        free.adaptive = TableCell{certified(t, problem, model), t->rank};
      }
      {
        DpResult r = optimal_binary_ordered(problem, model, std::nullopt);
        free.binary = TableCell{r.cost, r.tree->rank};
      }
      {
        DpResult r = optimal_ordered_hom(problem, model, std::nullopt);
        free.optimal = TableCell{r.cost, r.tree->rank};
      }
      rows.push_back(free);
    }
  }
  return rows;
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream ss;
  ss << "kind,gamma,mode,m,linear,linear_root,binary,binary_root,oblivious,"
        "oblivious_root,adaptive,adaptive_root,optimal,optimal_root,marker\n";
  for (const auto& r : rows) {
    ss << r.kind << ',' << r.gamma << ',' << r.mode << ',' << r.m << ','
       << r.linear.cost << ',' << r.linear.root << ',' << r.binary.cost << ','
       << r.binary.root << ',' << r.oblivious.cost << ',' << r.oblivious.root
       << ',' << r.adaptive.cost << ',' << r.adaptive.root << ','
       << r.optimal.cost << ',' << r.optimal.root << ',' << r.marker << '\n';
  }
  return ss.str();
}

}  // namespace gst
