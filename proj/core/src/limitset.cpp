#include "vahlen/limitset.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace vahlen {

namespace {

Eigen::VectorXd stereographic_lift(const CloudPoint& p, int n) {
  Eigen::VectorXd out(n + 1);
  if (p.at_infinity) {
    out.setZero();
    out[n] = 1.0;
    return out;
  }
  double q = 1.0 + p.x.squaredNorm();
  out.head(n) = 2.0 * p.x / q;
  out[n] = (p.x.squaredNorm() - 1.0) / q;
  return out;
}

}  // namespace

PointCloud orbit_points(const GroupSpec& spec, const std::vector<Point>& seeds, int max_len,
                        const EnumConfig& cfg, double dedup_resolution) {
  PointCloud cloud;
  cloud.n = spec.n;

  struct Tagged {
    Moebius g;
    int len;
  };
  std::vector<Tagged> elements;
  elements.push_back({Moebius::identity(spec.n), 0});
  for (int factor : {1, 2}) {
    LetterPool pool = build_letter_pool(spec, factor, cfg);
    cloud.truncated = cloud.truncated || pool.truncated;
    for (const Moebius& jm : pool.j_members)
      if (!jm.is_identity(cfg.eps_id)) elements.push_back({jm, 0});
  }
  if (max_len > 0) {
    Enumeration en = enumerate_normal_forms(spec, max_len, cfg);
    cloud.truncated = cloud.truncated || en.truncated;
    for (const NormalForm& w : en.forms) elements.push_back({w.value, w.length()});
  }

  // window dedup keyed by the first lifted coordinate
  std::multimap<double, Eigen::VectorXd> index;
  auto fresh = [&](const Eigen::VectorXd& lift) {
    auto lo = index.lower_bound(lift[0] - dedup_resolution);
    auto hi = index.upper_bound(lift[0] + dedup_resolution);
    for (auto it = lo; it != hi; ++it)
      if ((it->second - lift).norm() <= dedup_resolution) return false;
    index.emplace(lift[0], lift);
    return true;
  };

  for (const Tagged& t : elements) {
    for (const Point& seed : seeds) {
      Point im = t.g.apply(seed);
      CloudPoint cp;
      cp.at_infinity = im.at_infinity;
      cp.word_length = t.len;
      if (!im.at_infinity) cp.x = point_coords(im);
      else cp.x = Eigen::VectorXd::Zero(spec.n);
      if (dedup_resolution > 0.0 && !fresh(stereographic_lift(cp, spec.n))) continue;
      cloud.points.push_back(std::move(cp));
    }
  }
  return cloud;
}

SphereSet sphere_translates(const GroupSpec& spec, int max_len, const EnumConfig& cfg) {
  SphereSet set;
  SphereRecord base;
  base.word = "id";
  base.sphere = spec.sphere.sphere;
  set.entries.push_back(base);
  if (max_len <= 0) return set;

  CosetTable ct = enumerate_cosets(spec, CosetSide::G, max_len, cfg);
  set.truncated = ct.truncated;
  for (const CosetEntry& e : ct.entries) {
    SphereRecord rec;
    rec.word = e.word;
    rec.sphere = image_sphere(e.value, spec.sphere.sphere);
    // exactness residual at a few sample points of S
    double worst = 0.0;
    const Sphere& s = spec.sphere.sphere;
    int n = spec.n;
    for (int k = 0; k < 8; ++k) {
      Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
      u[k % n] = (k < n) ? 1.0 : -1.0;
      u /= u.norm();
      Eigen::VectorXd x;
      if (s.kind == Sphere::Kind::Euclidean)
        x = s.center + s.radius * u;
      else {
        Eigen::VectorXd tangent = u - u.dot(s.center) * s.center;
        if (tangent.norm() < 1e-9) continue;
        x = s.radius * s.center + static_cast<double>(k + 1) * tangent;
      }
      Point im = e.value.apply(Point::finite(from_coords(n, x)));
      worst = std::max(worst, std::fabs(signed_eval(rec.sphere, im)));
    }
    rec.residual = worst;
    set.entries.push_back(std::move(rec));
  }
  return set;
}

Point attracting_fixed_point(const Moebius& g, double tol) {
  ClassifyOptions opts;
  opts.fixed_point_tol = tol;
  MoebiusClass cls = classify(g, opts);
  if (cls.kind != MoebiusKind::Loxodromic)
    throw std::invalid_argument("attracting_fixed_point needs a loxodromic element, got " +
                                to_string(cls.kind));
  int n = g.dim();
  if (g.fixes_infinity()) {
    EuclideanForm f = euclidean_form(g);
    if (f.scale > 1.0) return Point::infinity(n);
    for (const Point& p : cls.fixed_points)
      if (!p.at_infinity) return p;
    throw std::runtime_error("attracting fixed point not located");
  }
  // three independent seeds through the power map must agree
  std::vector<Point> seeds = {Point::infinity(n)};
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  seeds.push_back(Point::finite(from_coords(n, a)));
  a[0] = 2.0;
  if (n > 1) a[1] = 1.0;
  seeds.push_back(Point::finite(from_coords(n, a)));

  Moebius p = g;
  int doublings = 0;
  while (doublings < 48 && p.frobenius_norm() < 1e7) {
    p = p.compose(p);
    ++doublings;
  }
  std::vector<Point> hits;
  for (const Point& s : seeds) {
    if (chordal_distance(g.apply(s), s) <= tol) continue;  // could be the repelling point
    Point x = p.apply(s);
    for (int i = 0; i < 64; ++i) x = g.apply(x);
    if (chordal_distance(g.apply(x), x) <= tol) hits.push_back(x);
  }
  if (hits.size() < 2) throw std::runtime_error("attracting fixed point did not converge");
  for (size_t i = 1; i < hits.size(); ++i)
    if (chordal_distance(hits[0], hits[i]) > 10.0 * tol)
      throw std::runtime_error("attracting fixed point seeds disagree");
  return hits[0];
}

void write_csv(const PointCloud& cloud, std::ostream& os, bool lifted) {
  int n = cloud.n;
  if (lifted) {
    for (int i = 0; i <= n; ++i) os << "x" << (i + 1) << ",";
    os << "word_length\n";
    for (const CloudPoint& p : cloud.points) {
      Eigen::VectorXd lift = stereographic_lift(p, n);
      for (int i = 0; i <= n; ++i) os << lift[i] << ",";
      os << p.word_length << "\n";
    }
    return;
  }
  for (int i = 0; i < n; ++i) os << "x" << (i + 1) << ",";
  os << "word_length\n";
  for (const CloudPoint& p : cloud.points) {
    if (p.at_infinity) continue;  // only the lifted export carries infinity
    for (int i = 0; i < n; ++i) os << p.x[i] << ",";
    os << p.word_length << "\n";
  }
}

void write_ply(const PointCloud& cloud, std::ostream& os) {
  if (cloud.n > 3) throw std::invalid_argument("PLY export supports n <= 3");
  size_t count = 0;
  for (const CloudPoint& p : cloud.points)
    if (!p.at_infinity) ++count;
  os << "ply\nformat ascii 1.0\nelement vertex " << count
     << "\nproperty float x\nproperty float y\nproperty float z\n"
        "property int word_length\nend_header\n";
  for (const CloudPoint& p : cloud.points) {
    if (p.at_infinity) continue;
    for (int i = 0; i < 3; ++i) os << (i < cloud.n ? p.x[i] : 0.0) << " ";
    os << p.word_length << "\n";
  }
}

nlohmann::ordered_json spheres_json(const SphereSet& set) {
  nlohmann::ordered_json j;
  j["schema"] = "spheres_v1";
  j["truncated"] = set.truncated;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const SphereRecord& r : set.entries) {
    nlohmann::ordered_json e;
    e["word"] = r.word;
    if (r.sphere.kind == Sphere::Kind::Euclidean) {
      e["type"] = "euclidean";
      nlohmann::ordered_json c = nlohmann::ordered_json::array();
      for (int i = 0; i < r.sphere.center.size(); ++i) c.push_back(r.sphere.center[i]);
      e["center"] = c;
      e["radius"] = r.sphere.radius;
    } else {
      e["type"] = "plane";
      nlohmann::ordered_json c = nlohmann::ordered_json::array();
      for (int i = 0; i < r.sphere.center.size(); ++i) c.push_back(r.sphere.center[i]);
      e["normal"] = c;
      e["offset"] = r.sphere.radius;
    }
    e["residual"] = r.residual;
    list.push_back(e);
  }
  j["spheres"] = list;
  return j;
}

}  // namespace vahlen
