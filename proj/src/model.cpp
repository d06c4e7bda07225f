#include "gst/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gst {

Problem::Problem(std::vector<std::int64_t> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ArgumentError("problem needs at least one block");
  prefix_.resize(blocks_.size() + 1, 0);
  for (size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i] < 0) throw ArgumentError("block sizes must be non-negative");
    prefix_[i + 1] = prefix_[i] + blocks_[i];
  }
}

std::int64_t Problem::segment(int i, int j) const {
  if (i < 0 || j >= size() || i > j)
    throw ArgumentError("segment range [" + std::to_string(i) + "," +
                        std::to_string(j) + "] out of bounds");
  return prefix_[static_cast<size_t>(j) + 1] - prefix_[static_cast<size_t>(i)];
}

CostModel CostModel::homogeneous(Time alpha, Time beta, Time gamma) {
  if (alpha < 0 || beta < 0 || gamma < 0)
    throw ArgumentError("cost parameters must be non-negative");
  if (is_inf(alpha) || is_inf(beta) || is_inf(gamma))
    throw ArgumentError("homogeneous parameters must be finite");
  CostModel m;
  m.homogeneous_ = true;
  m.hom_alpha_ = alpha;
  m.hom_beta_ = beta;
  m.hom_gamma_ = gamma;
  return m;
}

CostModel CostModel::non_homogeneous(std::vector<std::vector<Time>> alpha,
                                     std::vector<std::vector<Time>> beta,
                                     std::vector<Time> gamma) {
  CostModel m;
  m.homogeneous_ = false;
  m.dim_ = static_cast<int>(gamma.size());
  if (m.dim_ < 1) throw ArgumentError("gamma vector must not be empty");
  auto check_matrix = [&](const std::vector<std::vector<Time>>& mat,
                          const char* name, bool allow_inf) {
    if (static_cast<int>(mat.size()) != m.dim_)
      throw ArgumentError(std::string(name) + " matrix must be p x p");
    for (const auto& row : mat) {
      if (static_cast<int>(row.size()) != m.dim_)
        throw ArgumentError(std::string(name) + " matrix must be p x p");
      for (Time v : row) {
        if (v < 0) throw ArgumentError("cost parameters must be non-negative");
        if (!allow_inf && is_inf(v))
          throw ArgumentError(std::string(name) + " entries must be finite");
      }
    }
  };
  check_matrix(alpha, "alpha", true);
  check_matrix(beta, "beta", false);
  for (Time g : gamma) {
    if (g < 0 || is_inf(g))
      throw ArgumentError("gamma entries must be finite and non-negative");
  }
  m.alpha_ = std::move(alpha);
  m.beta_ = std::move(beta);
  m.gamma_ = std::move(gamma);
  return m;
}

Time CostModel::alpha(int sender, int receiver) const {
  if (homogeneous_) return hom_alpha_;
  return alpha_.at(static_cast<size_t>(sender)).at(static_cast<size_t>(receiver));
}

Time CostModel::beta(int sender, int receiver) const {
  if (homogeneous_) return hom_beta_;
  return beta_.at(static_cast<size_t>(sender)).at(static_cast<size_t>(receiver));
}

Time CostModel::gamma(int rank) const {
  if (homogeneous_) return hom_gamma_;
  return gamma_.at(static_cast<size_t>(rank));
}

CostModel CostModel::expanded(int p) const {
  if (!homogeneous_) return *this;
  std::vector<std::vector<Time>> a(static_cast<size_t>(p),
                                   std::vector<Time>(static_cast<size_t>(p), hom_alpha_));
  std::vector<std::vector<Time>> b(static_cast<size_t>(p),
                                   std::vector<Time>(static_cast<size_t>(p), hom_beta_));
  std::vector<Time> g(static_cast<size_t>(p), hom_gamma_);
  return non_homogeneous(std::move(a), std::move(b), std::move(g));
}

std::vector<std::string> CostModel::validate(int p) const {
  std::vector<std::string> warnings;
  if (homogeneous_) {
    if (hom_gamma_ > hom_beta_)
      warnings.push_back("gamma > beta: local copies cost more than sending");
    return warnings;
  }
  if (p > dim_)
    warnings.push_back("model covers fewer ranks than the problem");
  int n = std::min(p, dim_);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && gamma_[static_cast<size_t>(i)] > beta_[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
        warnings.push_back("gamma_" + std::to_string(i) + " > beta_" +
                           std::to_string(i) + std::to_string(j) +
                           ": local copies cost more than sending");
        return warnings;
      }
    }
  }
  return warnings;
}

Time comm_cost(const CostModel& model, int sender, int receiver,
               std::int64_t size) {
  if (sender == receiver)
    throw ArgumentError("sender and receiver must differ");
  if (sender < 0 || receiver < 0)
    throw ArgumentError("ranks must be non-negative");
  if (model.rank_limit() > 0 &&
      (sender >= model.rank_limit() || receiver >= model.rank_limit()))
    throw ArgumentError("rank outside the model");
  if (size < 0) throw ArgumentError("size must be non-negative");
  if (size == 0) return 0;
  Time a = model.alpha(sender, receiver);
  if (is_inf(a)) return kInfTime;
  return time_add(a, model.beta(sender, receiver) * size);
}

std::int64_t segment_size(const Problem& problem, int i, int j) {
  return problem.segment(i, j);
}

namespace {

using nlohmann::json;

Time time_from_json(const json& v, bool allow_inf) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf" && allow_inf) return kInfTime;
    throw ArgumentError("bad time value: " + v.dump());
  }
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (std::rint(d) == d && std::abs(d) < 9e15)
      return static_cast<std::int64_t>(d);
  }
  throw ArgumentError("time values must be integers: " + v.dump());
}

json time_to_json(Time t) {
  if (is_inf(t)) return json("inf");
  return json(t);
}

}  // namespace

Problem problem_from_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("blocks") || !j["blocks"].is_array())
    throw ArgumentError("problem json needs a \"blocks\" array");
  std::vector<std::int64_t> blocks;
  for (const auto& v : j["blocks"]) blocks.push_back(time_from_json(v, false));
  Problem problem(std::move(blocks));
  if (j.contains("p") && j["p"].get<std::int64_t>() != problem.size())
    throw ArgumentError("problem json: p does not match blocks length");
  return problem;
}

std::string problem_to_json(const Problem& problem, const std::string& meta) {
  json j;
  j["p"] = problem.size();
  j["blocks"] = problem.blocks();
  if (!meta.empty()) j["meta"] = json::parse(meta);
  return j.dump(2) + "\n";
}

CostModel model_from_json(const std::string& text) {
  json j = json::parse(text);
  std::string kind = j.value("kind", "");
  if (kind == "hom") {
    return CostModel::homogeneous(time_from_json(j.at("alpha"), false),
                                  time_from_json(j.at("beta"), false),
                                  time_from_json(j.at("gamma"), false));
  }
  if (kind == "nonhom") {
    auto matrix = [&](const char* key, bool allow_inf) {
      std::vector<std::vector<Time>> m;
      for (const auto& row : j.at(key)) {
        std::vector<Time> r;
        for (const auto& v : row) r.push_back(time_from_json(v, allow_inf));
        m.push_back(std::move(r));
      }
      return m;
    };
    std::vector<Time> gamma;
    for (const auto& v : j.at("gamma")) gamma.push_back(time_from_json(v, false));
    return CostModel::non_homogeneous(matrix("alpha", true), matrix("beta", false),
                                      std::move(gamma));
  }
  throw ArgumentError("model json: kind must be \"hom\" or \"nonhom\"");
}

std::string model_to_json(const CostModel& model) {
  json j;
  if (model.is_homogeneous()) {
    j["kind"] = "hom";
    j["alpha"] = model.hom_alpha();
    j["beta"] = model.hom_beta();
    j["gamma"] = model.hom_gamma();
  } else {
    j["kind"] = "nonhom";
    int p = model.rank_limit();
    json a = json::array(), b = json::array(), g = json::array();
    for (int i = 0; i < p; ++i) {
      json ra = json::array(), rb = json::array();
      for (int k = 0; k < p; ++k) {
        ra.push_back(time_to_json(model.alpha(i, k)));
        rb.push_back(time_to_json(model.beta(i, k)));
      }
      a.push_back(ra);
      b.push_back(rb);
      g.push_back(model.gamma(i));
    }
    j["alpha"] = a;
    j["beta"] = b;
    j["gamma"] = g;
  }
  return j.dump(2) + "\n";
}

namespace {
std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

Problem load_problem(const std::string& path) {
  return problem_from_json(read_file(path));
}

CostModel load_model(const std::string& path) {
  return model_from_json(read_file(path));
}

}  // namespace gst
