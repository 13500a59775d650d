#include "lcq/config.hpp"

#include <stdexcept>

namespace lcq {

namespace {

Vec vec_from_json(const nlohmann::json& j) {
  Vec v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = j.at(static_cast<size_t>(i)).get<double>();
  return v;
}

Mat mat_from_json(const nlohmann::json& j) {
  const int rows = static_cast<int>(j.size());
  if (rows == 0) throw std::invalid_argument("config: empty matrix");
  const int cols = static_cast<int>(j.at(0).size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j.at(static_cast<size_t>(i)).size()) != cols)
      throw std::invalid_argument("config: ragged matrix");
    for (int c = 0; c < cols; ++c)
      m(i, c) = j.at(static_cast<size_t>(i)).at(static_cast<size_t>(c)).get<double>();
  }
  return m;
}

}  // namespace

StarBody body_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "ball") {
    const int dim = j.at("dim").get<int>();
    const double r = j.value("radius", 1.0);
    return make_ball(dim, r);
  }
  if (type == "box") {
    return make_box(vec_from_json(j.at("half_widths")));
  }
  if (type == "ellipsoid") {
    return make_ellipsoid(mat_from_json(j.at("matrix")));
  }
  throw std::invalid_argument("config: unknown body type '" + type + "'");
}

FunctionDescriptor function_from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  const int dim = j.at("dim").get<int>();
  const nlohmann::json params = j.value("params", nlohmann::json::object());

  FunctionDescriptor f;
  if (family == "gaussian") {
    f = make_gaussian(dim, params.value("sigma", 1.0));
  } else if (family == "exp-norm") {
    f = make_exp_norm(dim);
  } else if (family == "power-law") {
    f = make_power_law(dim, params.at("alpha").get<double>());
  } else if (family == "indicator") {
    nlohmann::json body = params.value("body", nlohmann::json::object());
    if (!body.contains("type")) {
      body["type"] = "ball";
      body["dim"] = dim;
    }
    if (!body.contains("dim")) body["dim"] = dim;
    f = make_indicator(body_from_json(body));
  } else {
    throw std::invalid_argument("config: unknown family '" + family + "'");
  }
  if (j.contains("linear_map")) f = make_linear_image(f, mat_from_json(j.at("linear_map")));
  if (j.contains("shift")) f = make_shifted(f, vec_from_json(j.at("shift")));
  return f;
}

McSpec mcspec_from_json(const nlohmann::json& j, uint64_t default_seed) {
  McSpec mc;
  mc.seed = default_seed;
  for (const auto& [key, value] : j.items()) {
    if (key == "samples")
      mc.samples = value.get<int64_t>();
    else if (key == "seed")
      mc.seed = value.get<uint64_t>();
    else if (key == "inner_samples")
      mc.inner_samples = value.get<int64_t>();
    else if (key == "subspaces")
      mc.subspaces = value.get<int64_t>();
    else if (key == "volume_samples")
      mc.volume_samples = value.get<int64_t>();
    else if (key == "directions")
      mc.directions = value.get<int64_t>();
    else if (key == "profile_points")
      mc.profile_points = value.get<int>();
    else if (key == "level_points")
      mc.level_points = value.get<int>();
    else
      throw std::invalid_argument("config: unknown mc field '" + key + "'");
  }
  return mc;
}

RunConfig parse_run_config(const nlohmann::json& j) {
  RunConfig cfg;
  if (!j.contains("seed")) throw std::invalid_argument("config: seed is mandatory");
  cfg.seed = j.at("seed").get<uint64_t>();
  if (!j.contains("suites") || !j.at("suites").is_array() || j.at("suites").empty())
    throw std::invalid_argument("config: suites must be a non-empty list");
  for (const auto& s : j.at("suites")) cfg.suites.push_back(s.get<std::string>());
  if (j.contains("functions"))
    for (const auto& fj : j.at("functions")) cfg.function_specs.push_back(fj);
  if (j.contains("dims")) {
    cfg.dims.clear();
    for (const auto& d : j.at("dims")) cfg.dims.push_back(d.get<int>());
  }
  if (j.contains("ks")) {
    cfg.ks.clear();
    for (const auto& k : j.at("ks")) cfg.ks.push_back(k.get<int>());
  }
  cfg.mc = mcspec_from_json(j.value("mc", nlohmann::json::object()), cfg.seed);
  cfg.mc.seed = cfg.seed;  // the run seed governs
  cfg.output = j.value("output", std::string());

  // FNV-1a over the canonical dump.
  const std::string dump = j.dump();
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : dump) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  cfg.config_hash = buf;
  return cfg;
}

std::vector<FunctionDescriptor> instantiate_functions(const RunConfig& cfg, int n) {
  std::vector<FunctionDescriptor> out;
  for (const auto& spec : cfg.function_specs) {
    if (spec.contains("dim")) {
      if (spec.at("dim").get<int>() == n) out.push_back(function_from_json(spec));
    } else {
      nlohmann::json with_dim = spec;
      with_dim["dim"] = n;
      out.push_back(function_from_json(with_dim));
    }
  }
  return out;
}

}  // namespace lcq
