#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gst/bounds.hpp"
#include "gst/builders.hpp"
#include "gst/distributions.hpp"
#include "gst/dp.hpp"
#include "gst/model.hpp"
#include "gst/oracle.hpp"
#include "gst/table.hpp"
#include "gst/tree.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw gst::ArgumentError("cannot write " + path);
  out << content;
}

std::optional<int> parse_root(const std::string& s) {
  if (s == "free") return std::nullopt;
  try {
    size_t used = 0;
    int r = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return r;
  } catch (const std::exception&) {
    throw gst::ArgumentError("--root must be an integer rank or \"free\"");
  }
}

void print_warnings(const gst::CostModel& model, const gst::Problem& problem) {
  for (const auto& w : model.validate(problem.size()))
    std::cerr << "warning: " << w << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"communication trees for irregular gather/scatter collectives"};
  app.require_subcommand(1);

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a block-size distribution");
  std::string gen_kind = "same", gen_out;
  int gen_p = 8;
  std::int64_t gen_b = 1000, gen_rho = 5;
  std::uint64_t gen_seed = 1;
  gen->add_option("--kind", gen_kind, "distribution kind")->required();
  gen->add_option("--p", gen_p, "number of processors")->required();
  gen->add_option("--b", gen_b, "average block size");
  gen->add_option("--rho", gen_rho, "spikes/skewed parameter");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output problem json")->required();

  // --- build ---
  auto* build = app.add_subcommand("build", "construct a heuristic tree");
  std::string build_algo, build_root = "free", build_problem, build_model;
  std::string build_out, build_dot;
  build->add_option("--algo", build_algo, "linear|binomial|adaptive|two")
      ->required();
  build->add_option("--root", build_root,
                    "rank or \"free\" (for two: the large rank)");
  build->add_option("--problem", build_problem)->required();
  build->add_option("--model", build_model)->required();
  build->add_option("--out", build_out, "output tree json");
  build->add_option("--dot", build_dot, "also write DOT");

  // --- dp ---
  auto* dp = app.add_subcommand("dp", "optimal ordered trees");
  std::string dp_kind, dp_root = "free", dp_problem, dp_model;
  std::string dp_out, dp_cost_out;
  std::int64_t dp_msize = -1;
  dp->add_option("--kind", dp_kind, "vardeg|binary|broadcast")->required();
  dp->add_option("--root", dp_root, "rank or \"free\"");
  dp->add_option("--problem", dp_problem)->required();
  dp->add_option("--model", dp_model)->required();
  dp->add_option("--out", dp_out, "output tree json");
  dp->add_option("--cost-out", dp_cost_out, "write the cost to a file");
  dp->add_option("--msize", dp_msize,
                 "broadcast message size (default: problem total)");

  // --- oracle ---
  auto* oracle = app.add_subcommand("oracle", "brute-force ground truth");
  std::string or_kind, or_root = "free", or_problem, or_model;
  std::string or_out, or_cost_out;
  oracle->add_option("--kind", or_kind, "ordered|nonordered")->required();
  oracle->add_option("--root", or_root, "rank or \"free\"");
  oracle->add_option("--problem", or_problem)->required();
  oracle->add_option("--model", or_model)->required();
  oracle->add_option("--out", or_out, "output tree json");
  oracle->add_option("--cost-out", or_cost_out, "write the cost to a file");

  // --- partition ---
  auto* partition =
      app.add_subcommand("partition", "certify a PARTITION gather instance");
  std::string part_values;
  partition->add_option("--values", part_values, "comma separated integers")
      ->required();

  // --- bounds ---
  auto* bounds = app.add_subcommand("bounds", "lower bounds for a root");
  std::string bo_problem, bo_model;
  int bo_root = 0, bo_k = 0;
  bounds->add_option("--problem", bo_problem)->required();
  bounds->add_option("--model", bo_model)->required();
  bounds->add_option("--root", bo_root)->required();
  bounds->add_option("--k", bo_k, "also compute k-ported bounds");

  // --- table ---
  auto* table = app.add_subcommand("table", "model-experiment table");
  gst::TableParams tp;
  std::string table_out;
  table->add_option("--p", tp.p);
  table->add_option("--b", tp.b);
  table->add_option("--rho", tp.rho);
  table->add_option("--alpha", tp.alpha);
  table->add_option("--beta", tp.beta);
  table->add_option("--gamma", tp.gamma);
  table->add_option("--root", tp.root);
  table->add_option("--seed", tp.seed);
  table->add_flag("--gamma0", tp.with_gamma_zero, "append a gamma=0 block");
  table->add_option("--max-dp-p", tp.max_dp_p, "DP resource ceiling");
  table->add_option("--out", table_out, "output csv")->required();

  // --- export ---
  auto* exp = app.add_subcommand("export", "export a tree");
  std::string ex_tree, ex_problem, ex_model, ex_format, ex_out;
  std::string ex_direction = "gather";
  exp->add_option("--tree", ex_tree)->required();
  exp->add_option("--problem", ex_problem)->required();
  exp->add_option("--model", ex_model)->required();
  exp->add_option("--format", ex_format, "dot|json|schedule_csv")->required();
  exp->add_option("--direction", ex_direction, "gather|scatter");
  exp->add_option("--out", ex_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*gen) {
    gst::Problem problem =
        gst::gen_distribution(gen_kind, gen_p, gen_b, gen_rho, gen_seed);
    std::ostringstream meta;
    meta << "{\"generator\":\"mt19937_64/bounded-rejection\",\"kind\":\""
         << gen_kind << "\",\"b\":" << gen_b << ",\"rho\":" << gen_rho
         << ",\"seed\":" << gen_seed << "}";
    write_file(gen_out, gst::problem_to_json(problem, meta.str()));
    return 0;
  }

  if (*build) {
    gst::Problem problem = gst::load_problem(build_problem);
    gst::CostModel model = gst::load_model(build_model);
    print_warnings(model, problem);
    std::optional<int> root = parse_root(build_root);
    gst::TreePtr tree;
    if (build_algo == "linear") {
      if (!root) throw gst::ArgumentError("linear needs a concrete --root");
      tree = gst::linear_star(problem, *root);
    } else if (build_algo == "binomial") {
      if (!root) throw gst::ArgumentError("binomial needs a concrete --root");
      tree = gst::binomial_oblivious(problem, *root);
    } else if (build_algo == "adaptive") {
      tree = gst::adaptive_binomial(problem, model, root);
    } else if (build_algo == "two") {
      if (!root) throw gst::ArgumentError("two needs --root = the large rank");
      tree = gst::two_tree(problem, model, *root);
    } else {
      throw gst::ArgumentError("unknown --algo " + build_algo);
    }
    std::cout << "cost " << gst::evaluate(*tree, problem, model) << "\n";
    if (!build_out.empty()) write_file(build_out, gst::tree_to_json(*tree));
    if (!build_dot.empty())
      write_file(build_dot, gst::tree_to_dot(*tree, problem));
    return 0;
  }

  if (*dp) {
    gst::Problem problem = gst::load_problem(dp_problem);
    gst::CostModel model = gst::load_model(dp_model);
    print_warnings(model, problem);
    std::optional<int> root = parse_root(dp_root);
    gst::DpResult result;
    if (dp_kind == "vardeg") {
      result = model.is_homogeneous()
                   ? gst::optimal_ordered_hom(problem, model, root)
                   : gst::optimal_ordered_nonhom(problem, model, root);
    } else if (dp_kind == "binary") {
      result = gst::optimal_binary_ordered(problem, model, root);
    } else if (dp_kind == "broadcast") {
      std::int64_t m = dp_msize >= 0 ? dp_msize : problem.total();
      result = gst::optimal_broadcast_ordered(problem.size(), m, model, root);
    } else {
      throw gst::ArgumentError("unknown --kind " + dp_kind);
    }
    std::cout << "cost " << result.cost << " root " << result.tree->rank
              << "\n";
    if (!dp_out.empty()) write_file(dp_out, gst::tree_to_json(*result.tree));
    if (!dp_cost_out.empty())
      write_file(dp_cost_out, std::to_string(result.cost) + "\n");
    return 0;
  }

  if (*oracle) {
    gst::Problem problem = gst::load_problem(or_problem);
    gst::CostModel model = gst::load_model(or_model);
    print_warnings(model, problem);
    std::optional<int> root = parse_root(or_root);
    gst::DpResult result;
    if (or_kind == "ordered") {
      result = gst::exhaustive_ordered(problem, model, root);
    } else if (or_kind == "nonordered") {
      result = gst::optimal_nonordered(problem, model, root);
    } else {
      throw gst::ArgumentError("unknown --kind " + or_kind);
    }
    std::cout << "cost " << result.cost << " root " << result.tree->rank
              << "\n";
    if (!or_out.empty()) write_file(or_out, gst::tree_to_json(*result.tree));
    if (!or_cost_out.empty())
      write_file(or_cost_out, std::to_string(result.cost) + "\n");
    return 0;
  }

  if (*partition) {
    std::vector<std::int64_t> values;
    std::stringstream ss(part_values);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) values.push_back(std::stoll(tok));
    }
    gst::PartitionInstance inst = gst::build_partition_instance(values);
    std::cout << "blocks";
    for (auto b : inst.problem.blocks()) std::cout << ' ' << b;
    std::cout << "\nthreshold " << inst.threshold << "\n";
    gst::DpResult non =
        gst::optimal_nonordered(inst.problem, inst.model, std::nullopt);
    gst::DpResult ord =
        gst::optimal_ordered_hom(inst.problem, inst.model, std::nullopt);
    std::cout << "nonordered " << non.cost << "\nordered " << ord.cost << "\n";
    std::cout << "verdict: "
              << (non.cost == inst.threshold ? "partition exists"
                                             : "no partition")
              << "\n";
    return 0;
  }

  if (*bounds) {
    gst::Problem problem = gst::load_problem(bo_problem);
    gst::CostModel model = gst::load_model(bo_model);
    print_warnings(model, problem);
    std::cout << "{\n  \"one_ported\": "
              << gst::lb_one_ported(problem, model, bo_root);
    if (bo_k > 0 && model.is_homogeneous()) {
      std::cout << ",\n  \"k_splittable\": "
                << gst::lb_k_ported_splittable(problem, model, bo_root, bo_k)
                << ",\n  \"k_partition\": "
                << gst::lb_k_ported_partition(problem, model, bo_root, bo_k);
    }
    std::cout << "\n}\n";
    return 0;
  }

  if (*table) {
    auto rows = gst::run_table(tp);
    write_file(table_out, gst::table_to_csv(rows));
    return 0;
  }

  if (*exp) {
    gst::Problem problem = gst::load_problem(ex_problem);
    gst::CostModel model = gst::load_model(ex_model);
    gst::TreePtr tree = gst::load_tree(ex_tree);
    auto violations = gst::validate_tree(*tree, problem.size());
    if (!violations.empty())
      throw gst::ArgumentError("invalid tree: " + violations.front());
    if (ex_format == "dot") {
      write_file(ex_out, gst::tree_to_dot(*tree, problem));
    } else if (ex_format == "json") {
      write_file(ex_out, gst::tree_to_json(*tree));
    } else if (ex_format == "schedule_csv") {
      gst::Direction dir = ex_direction == "scatter" ? gst::Direction::scatter
                                                     : gst::Direction::gather;
      if (ex_direction != "gather" && ex_direction != "scatter")
        throw gst::ArgumentError("--direction must be gather or scatter");
      auto schedule = gst::extract_schedule(*tree, problem, model, dir);
      write_file(ex_out, gst::schedule_to_csv(schedule));
    } else {
      throw gst::ArgumentError("unknown --format " + ex_format);
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gst::ResourceLimitError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
