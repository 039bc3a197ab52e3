#include "irw/scenario_io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace irw {

using nlohmann::json;

ErrorDist error_dist_from_json(const json& j) {
  ErrorDist out;
  const std::string type = j.at("type").get<std::string>();
  if (type == "normal") {
    NormalDist d;
    d.mu = j.value("mu", 0.0);
    d.sigma = j.at("sigma").get<double>();
    out.dist = d;
  } else if (type == "sgt") {
    SgtDist d;
    d.mu = j.value("mu", 0.0);
    d.sigma2 = j.at("sigma2").get<double>();
    d.skew = j.value("skew", 0.0);
    d.p_shape = j.at("p").get<double>();
    d.q_shape = j.at("q").get<double>();
    out.dist = d;
  } else if (type == "lognormal") {
    LogNormalDist d;
    d.mu_log = j.value("mu_log", 0.0);
    d.sigma_log = j.at("sigma_log").get<double>();
    out.dist = d;
  } else if (type == "pareto") {
    ParetoDist d;
    d.x_m = j.at("x_m").get<double>();
    d.alpha = j.at("alpha").get<double>();
    out.dist = d;
  } else {
    throw std::invalid_argument("unknown error distribution type: " + type);
  }
  out.centered = j.value("centered", false);
  out.validate();
  return out;
}

json error_dist_to_json(const ErrorDist& dist) {
  json j;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalDist>) {
          j["type"] = "normal";
          j["mu"] = d.mu;
          j["sigma"] = d.sigma;
        } else if constexpr (std::is_same_v<T, SgtDist>) {
          j["type"] = "sgt";
          j["mu"] = d.mu;
          j["sigma2"] = d.sigma2;
          j["skew"] = d.skew;
          j["p"] = d.p_shape;
          j["q"] = d.q_shape;
        } else if constexpr (std::is_same_v<T, LogNormalDist>) {
          j["type"] = "lognormal";
          j["mu_log"] = d.mu_log;
          j["sigma_log"] = d.sigma_log;
        } else {
          j["type"] = "pareto";
          j["x_m"] = d.x_m;
          j["alpha"] = d.alpha;
        }
      },
      dist.dist);
  j["centered"] = dist.centered;
  return j;
}

ScenarioSpec scenario_from_json(const json& j) {
  ScenarioSpec spec;
  spec.n = j.at("n").get<Eigen::Index>();
  spec.d = j.at("d").get<Eigen::Index>();
  const auto coeffs = j.at("beta_star").get<std::vector<double>>();
  if (Eigen::Index(coeffs.size()) > spec.d)
    throw std::invalid_argument("scenario: beta_star longer than d");
  spec.beta_star = Eigen::VectorXd::Zero(spec.d);
  for (std::size_t k = 0; k < coeffs.size(); ++k) spec.beta_star[Eigen::Index(k)] = coeffs[k];
  spec.model = model_kind_from_string(j.value("model", std::string("homoscedastic")));
  spec.error = error_dist_from_json(j.at("error"));
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.validate();
  return spec;
}

json scenario_to_json(const ScenarioSpec& spec) {
  json j;
  j["n"] = spec.n;
  j["d"] = spec.d;
  j["beta_star"] = std::vector<double>(spec.beta_star.data(),
                                       spec.beta_star.data() + spec.beta_star.size());
  j["model"] = to_string(spec.model);
  j["error"] = error_dist_to_json(spec.error);
  j["seed"] = spec.seed;
  return j;
}

std::vector<ScenarioSpec> load_scenarios(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  std::vector<ScenarioSpec> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(scenario_from_json(item));
  } else {
    out.push_back(scenario_from_json(j));
  }
  if (out.empty()) throw std::runtime_error(path + ": no scenarios");
  return out;
}

}  // namespace irw
