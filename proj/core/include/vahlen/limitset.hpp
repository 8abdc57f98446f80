#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "vahlen/amalgam.hpp"

namespace vahlen {

// Orbit-based limit set approximation: every enumerated element applied to
// every seed, tagged with the word length that produced the point.
struct CloudPoint {
  Eigen::VectorXd x;
  bool at_infinity = false;
  int word_length = 0;
};

struct PointCloud {
  int n = 2;
  std::vector<CloudPoint> points;
  bool truncated = false;
};

PointCloud orbit_points(const GroupSpec& spec, const std::vector<Point>& seeds, int max_len,
                        const EnumConfig& cfg, double dedup_resolution = 1e-4);

struct SphereRecord {
  std::string word;
  Sphere sphere;
  double residual = 0.0;  // max distance of mapped sample points from the image sphere
};

struct SphereSet {
  std::vector<SphereRecord> entries;
  bool truncated = false;
};

// image_sphere over all canonical coset representatives up to max_len;
// length 0 contributes S itself.
SphereSet sphere_translates(const GroupSpec& spec, int max_len, const EnumConfig& cfg);

// Attracting fixed point of a loxodromic transformation, by power iteration
// from independent seeds.  Throws std::invalid_argument for non-loxodromic
// input and std::runtime_error when the seeds disagree.
Point attracting_fixed_point(const Moebius& g, double tol = 1e-9);

// CSV "x1,...,xn,word_length"; lifted = true exports stereographic
// coordinates on the unit n-sphere (n+1 columns) with infinity at the north
// pole, otherwise finite points only.
void write_csv(const PointCloud& cloud, std::ostream& os, bool lifted = false);
// ascii PLY for n <= 3 clouds (coordinates padded with zeros).
void write_ply(const PointCloud& cloud, std::ostream& os);

nlohmann::ordered_json spheres_json(const SphereSet& set);

}  // namespace vahlen
