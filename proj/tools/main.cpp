#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "vahlen/builtin_examples.hpp"
#include "vahlen/config_io.hpp"
#include "vahlen/limitset.hpp"
#include "vahlen/verify.hpp"

namespace fs = std::filesystem;
using namespace vahlen;

namespace {

struct CommonOpts {
  std::string example;
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "json";
  int max_length = -1;
  int letter_depth = -1;
  double eps_id = -1.0;
  double delta_geo = -1.0;
  int dim = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--example", o.example,
                  "built-in example id: example1|example2|example3|counterexample");
  cmd->add_option("--config", o.config_path, "spec_v1 JSON config file");
  cmd->add_option("-L,--max-length", o.max_length, "word length bound");
  cmd->add_option("--letter-depth", o.letter_depth, "generator-word bound per letter");
  cmd->add_option("--eps-id", o.eps_id, "projective identity tolerance");
  cmd->add_option("--delta-geo", o.delta_geo, "geometric predicate tolerance band");
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--format", o.format, "export format: csv|ply|json");
  cmd->add_option("-n,--dim", o.dim, "ambient dimension override for built-in examples");
}

GroupSpec resolve_spec(const CommonOpts& o, CheckConfig& cfg, std::string& name) {
  if (!o.example.empty() && !o.config_path.empty())
    throw std::runtime_error("give either --example or --config, not both");
  GroupSpec spec;
  if (!o.example.empty()) {
    auto id = example_id_from_string(o.example);
    if (!id) throw std::runtime_error("unknown example id: " + o.example);
    spec = builtin_example(*id, o.dim);
    cfg = default_check_config(*id);
    name = o.example;
  } else if (!o.config_path.empty()) {
    spec = load_spec_file(o.config_path, &cfg);
    name = fs::path(o.config_path).stem().string();
  } else {
    throw std::runtime_error("one of --example or --config is required");
  }
  if (o.max_length >= 0) cfg.max_length = o.max_length;
  if (o.letter_depth >= 0) cfg.letter_depth = o.letter_depth;
  if (o.eps_id > 0.0) cfg.eps_id = o.eps_id;
  if (o.delta_geo > 0.0) cfg.delta_geo = o.delta_geo;
  return spec;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int run_check(const CommonOpts& o) {
  CheckConfig cfg;
  std::string name;
  GroupSpec spec = resolve_spec(o, cfg, name);
  SuiteReport rep = run_suite(spec, cfg, name);
  for (const CheckResult& c : rep.checks)
    std::cout << c.check << ": " << to_string(c.verdict) << (c.note.empty() ? "" : "  (" + c.note + ")")
              << "\n";
  fs::path out = fs::path(o.out_dir) / (name + "_report.json");
  write_file(out, report_json(rep).dump(2) + "\n");
  std::cout << "report written to " << out.string() << "\n";
  return rep.any_fail() ? 1 : 0;
}

int run_limitset(const CommonOpts& o, const std::vector<double>& seed, bool lifted) {
  CheckConfig cfg;
  std::string name;
  GroupSpec spec = resolve_spec(o, cfg, name);
  std::vector<Point> seeds;
  if (seed.empty()) {
    seeds.push_back(Point::finite(from_coords(spec.n, Eigen::VectorXd::Zero(spec.n))));
  } else {
    if (static_cast<int>(seed.size()) != spec.n)
      throw std::runtime_error("--seed needs n coordinates");
    Eigen::VectorXd v(spec.n);
    for (int i = 0; i < spec.n; ++i) v[i] = seed[static_cast<size_t>(i)];
    seeds.push_back(Point::finite(from_coords(spec.n, v)));
  }
  PointCloud cloud = orbit_points(spec, seeds, cfg.max_length, cfg.enum_config());
  std::ostringstream os;
  fs::path out;
  if (o.format == "ply") {
    write_ply(cloud, os);
    out = fs::path(o.out_dir) / (name + "_limitset.ply");
  } else {
    write_csv(cloud, os, lifted);
    out = fs::path(o.out_dir) / (name + "_limitset.csv");
  }
  write_file(out, os.str());
  std::cout << cloud.points.size() << " points written to " << out.string()
            << (cloud.truncated ? " (truncated)" : "") << "\n";
  return 0;
}

int run_spheres(const CommonOpts& o) {
  CheckConfig cfg;
  std::string name;
  GroupSpec spec = resolve_spec(o, cfg, name);
  SphereSet set = sphere_translates(spec, cfg.max_length, cfg.enum_config());
  ordered_json j = spheres_json(set);
  // pairwise non-crossing certificate (precisely embedded at this scale)
  int crossing = 0, marginal = 0;
  for (size_t i = 0; i < set.entries.size(); ++i)
    for (size_t k = i + 1; k < set.entries.size(); ++k) {
      Cert c = spheres_disjoint(set.entries[i].sphere, set.entries[k].sphere, cfg.delta_geo);
      if (c == Cert::No) ++crossing;
      if (c == Cert::Marginal) ++marginal;
    }
  j["pairwise_disjoint"] = (crossing == 0 && marginal == 0);
  j["intersecting_pairs"] = crossing;
  j["marginal_pairs"] = marginal;
  fs::path out = fs::path(o.out_dir) / (name + "_spheres.json");
  write_file(out, j.dump(2) + "\n");
  std::cout << set.entries.size() << " spheres written to " << out.string() << "\n";
  return 0;
}

int run_freeness(const CommonOpts& o) {
  CheckConfig cfg;
  std::string name;
  GroupSpec spec = resolve_spec(o, cfg, name);
  KernelSearchResult ks = kernel_search(spec, cfg.max_length, cfg.eps_id, cfg.enum_config());
  if (ks.witness) {
    std::cout << "kernel witness: " << ks.witness->label(spec)
              << "  residual " << ks.witness->value.distance_to_identity() << "\n";
    return 1;
  }
  if (ks.truncated) {
    std::cout << "no witness before the enumeration budget (truncated)\n";
    return 2;
  }
  std::cout << "no kernel witness up to length " << cfg.max_length << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moebius groups via Clifford matrices: combination-theorem checks"};
  app.require_subcommand(1);

  CommonOpts check_o, limit_o, spheres_o, free_o;
  std::vector<double> seed;
  bool lifted = false;

  CLI::App* check = app.add_subcommand("check", "run the full hypothesis/conclusion suite");
  add_common(check, check_o);
  CLI::App* limitset = app.add_subcommand("limitset", "export an orbit point cloud");
  add_common(limitset, limit_o);
  limitset->add_option("--seed", seed, "seed point coordinates (default: origin)");
  limitset->add_flag("--lift", lifted, "export stereographic coordinates on the n-sphere");
  CLI::App* spheres = app.add_subcommand("spheres", "export sphere translates");
  add_common(spheres, spheres_o);
  CLI::App* freeness = app.add_subcommand("freeness", "kernel search for the evaluation map");
  add_common(freeness, free_o);

  CLI11_PARSE(app, argc, argv);
  try {
    if (check->parsed()) return run_check(check_o);
    if (limitset->parsed()) return run_limitset(limit_o, seed, lifted);
    if (spheres->parsed()) return run_spheres(spheres_o);
    if (freeness->parsed()) return run_freeness(free_o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
