#include "vahlen/config_io.hpp"

#include <fstream>
#include <stdexcept>

namespace vahlen {

ordered_json clifford_json(const Clifford& c) {
  ordered_json j = ordered_json::object();
  for (int m = 0; m < c.blade_count(); ++m) {
    double v = c.coeff(static_cast<unsigned>(m));
    if (v != 0.0) j[blade_name(static_cast<unsigned>(m))] = v;
  }
  return j;
}

Clifford clifford_from_json(const nlohmann::json& j, int dim) {
  Clifford c(dim);
  if (!j.is_object()) throw std::runtime_error("blade map must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    unsigned mask = parse_blade(it.key(), dim);
    c.set_coeff(mask, it.value().get<double>());
  }
  return c;
}

ordered_json moebius_json(const Moebius& m) {
  ordered_json j;
  j["a"] = clifford_json(m.a());
  j["b"] = clifford_json(m.b());
  j["c"] = clifford_json(m.c());
  j["d"] = clifford_json(m.d());
  return j;
}

Moebius moebius_from_json(const nlohmann::json& j, int dim) {
  return Moebius(clifford_from_json(j.at("a"), dim), clifford_from_json(j.at("b"), dim),
                 clifford_from_json(j.at("c"), dim), clifford_from_json(j.at("d"), dim));
}

namespace {
Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<long>(i)] = j[i].get<double>();
  return v;
}
ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}
}  // namespace

ordered_json sphere_to_json(const Sphere& s) {
  ordered_json j;
  if (s.kind == Sphere::Kind::Euclidean) {
    j["type"] = "euclidean";
    j["center"] = vector_to_json(s.center);
    j["radius"] = s.radius;
  } else {
    j["type"] = "plane";
    j["normal"] = vector_to_json(s.center);
    j["offset"] = s.radius;
  }
  return j;
}

Sphere sphere_from_json(const nlohmann::json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "euclidean")
    return Sphere::euclidean(vector_from_json(j.at("center")), j.at("radius").get<double>());
  if (type == "plane")
    return Sphere::plane(vector_from_json(j.at("normal")), j.at("offset").get<double>());
  throw std::runtime_error("sphere type must be euclidean or plane");
}

ordered_json ballpair_json(const BallPair& bp) {
  ordered_json j = sphere_to_json(bp.sphere);
  if (bp.sphere.kind == Sphere::Kind::Euclidean)
    j["b1"] = bp.b1_negative ? "interior" : "exterior";
  else
    j["b1"] = bp.b1_negative ? "negative" : "positive";
  return j;
}

BallPair ballpair_from_json(const nlohmann::json& j) {
  BallPair bp;
  bp.sphere = sphere_from_json(j);
  std::string side = j.at("b1").get<std::string>();
  if (side == "interior" || side == "negative") bp.b1_negative = true;
  else if (side == "exterior" || side == "positive") bp.b1_negative = false;
  else throw std::runtime_error("b1 side must be interior/exterior or negative/positive");
  return bp;
}

ordered_json spec_json(const GroupSpec& spec) {
  ordered_json j;
  j["schema"] = "spec_v1";
  j["n"] = spec.n;
  for (const char* key : {"g1", "g2"}) {
    const auto& gens = (key[1] == '1') ? spec.gens1 : spec.gens2;
    ordered_json list = ordered_json::array();
    for (const auto& [name, mat] : gens) {
      ordered_json g = moebius_json(mat);
      ordered_json named;
      named["name"] = name;
      for (auto it = g.begin(); it != g.end(); ++it) named[it.key()] = it.value();
      list.push_back(named);
    }
    j[key] = list;
  }
  ordered_json oracle;
  oracle["kind"] =
      spec.j.kind == JOracle::Kind::FiniteList ? "finite_list" : "integer_matrix";
  ordered_json data = ordered_json::array();
  for (const Moebius& m : spec.j.elements) data.push_back(moebius_json(m));
  oracle["data"] = data;
  j["j"] = oracle;
  j["sphere"] = ballpair_json(spec.sphere);
  return j;
}

GroupSpec spec_from_json(const nlohmann::json& j) {
  if (j.value("schema", std::string{}) != "spec_v1")
    throw std::runtime_error("config schema must be spec_v1");
  GroupSpec spec;
  spec.n = j.at("n").get<int>();
  auto read_gens = [&](const char* key) {
    std::vector<std::pair<std::string, Moebius>> gens;
    for (const auto& g : j.at(key)) {
      std::string name = g.at("name").get<std::string>();
      try {
        gens.emplace_back(name, moebius_from_json(g, spec.n));
      } catch (const std::exception& e) {
        throw std::runtime_error("generator '" + name + "': " + e.what());
      }
    }
    return gens;
  };
  spec.gens1 = read_gens("g1");
  spec.gens2 = read_gens("g2");
  const auto& oracle = j.at("j");
  std::string kind = oracle.at("kind").get<std::string>();
  if (kind == "finite_list") spec.j.kind = JOracle::Kind::FiniteList;
  else if (kind == "integer_matrix") spec.j.kind = JOracle::Kind::IntegerMatrix;
  else throw std::runtime_error("j.kind must be finite_list or integer_matrix");
  for (const auto& m : oracle.at("data")) spec.j.elements.push_back(moebius_from_json(m, spec.n));
  spec.sphere = ballpair_from_json(j.at("sphere"));
  return spec;
}

CheckConfig check_config_from_json(const nlohmann::json& j, CheckConfig base) {
  CheckConfig cfg = base;
  if (j.contains("max_length")) cfg.max_length = j["max_length"].get<int>();
  if (j.contains("letter_depth")) cfg.letter_depth = j["letter_depth"].get<int>();
  if (j.contains("eps_id")) cfg.eps_id = j["eps_id"].get<double>();
  if (j.contains("delta_geo")) cfg.delta_geo = j["delta_geo"].get<double>();
  if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
  if (j.contains("node_budget")) cfg.node_budget = j["node_budget"].get<long>();
  if (j.contains("peak_grid")) cfg.peak_grid = j["peak_grid"].get<std::vector<double>>();
  if (j.contains("conjugator_depth")) cfg.conjugator_depth = j["conjugator_depth"].get<int>();
  if (j.contains("translation_depth")) cfg.translation_depth = j["translation_depth"].get<int>();
  if (j.contains("nesting_depth")) cfg.nesting_depth = j["nesting_depth"].get<int>();
  if (j.contains("rng_seed")) cfg.rng_seed = j["rng_seed"].get<std::uint64_t>();
  return cfg;
}

GroupSpec load_spec_file(const std::string& path, CheckConfig* cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("config parse error in " + path + ": " + e.what());
  }
  GroupSpec spec = spec_from_json(j);
  if (cfg && j.contains("checks")) *cfg = check_config_from_json(j["checks"], *cfg);
  return spec;
}

}  // namespace vahlen
