#include <doctest.h>

#include <set>
#include <sstream>

#include "vahlen/builtin_examples.hpp"
#include "vahlen/limitset.hpp"

using namespace vahlen;

namespace {
Point origin(int n) { return Point::finite(from_coords(n, Eigen::VectorXd::Zero(n))); }
}  // namespace

TEST_CASE("orbit of the origin in example 2 at length 1") {
  GroupSpec s = builtin_example(ExampleId::Example2);
  EnumConfig cfg;
  PointCloud cloud = orbit_points(s, {origin(3)}, 1, cfg);
  std::set<int> xs;
  for (const CloudPoint& p : cloud.points) {
    CHECK(!p.at_infinity);
    CHECK(std::fabs(p.x[1]) < 1e-12);
    xs.insert(static_cast<int>(std::lround(p.x[0])));
  }
  // translations by +-5, +-10; everything else fixes the origin
  CHECK(xs == std::set<int>{-10, -5, 0, 5, 10});
  CHECK(cloud.points.size() == 5);
}

TEST_CASE("empty generator spec keeps the seeds") {
  GroupSpec s;
  s.n = 3;
  s.j.kind = JOracle::Kind::FiniteList;
  s.j.elements = {Moebius::identity(3)};
  s.sphere.sphere = Sphere::euclidean(Eigen::VectorXd::Zero(3), 1.0);
  EnumConfig cfg;
  Eigen::VectorXd a(3);
  a << 1, 2, 3;
  PointCloud cloud = orbit_points(s, {origin(3), Point::finite(from_coords(3, a))}, 4, cfg);
  CHECK(cloud.points.size() == 2);
}

TEST_CASE("counterexample orbit stays on the real line") {
  GroupSpec s = builtin_example(ExampleId::Counterexample);
  EnumConfig cfg;
  cfg.letter_depth = 3;  // deeper J letters populate the rational orbit
  PointCloud cloud = orbit_points(s, {origin(2)}, 6, cfg);
  CHECK(cloud.points.size() >= 10);
  for (const CloudPoint& p : cloud.points) {
    if (p.at_infinity) continue;
    // the whole group preserves the real axis, so the e1 coordinate
    // vanishes; 0.05 is the frozen chordal threshold from the oracle run
    CHECK(std::fabs(p.x[1]) < 1e-9);
    double chordal_to_axis = 2.0 * std::fabs(p.x[1]) / std::sqrt(1.0 + p.x.squaredNorm());
    CHECK(chordal_to_axis < 0.05);
  }
}

TEST_CASE("orbit invariance: generator images of the L-1 cloud lie in the L cloud") {
  GroupSpec s = builtin_example(ExampleId::Example2);
  EnumConfig cfg;
  double rho = 1e-4;
  PointCloud small = orbit_points(s, {origin(3)}, 1, cfg, rho);
  EnumConfig deeper = cfg;  // one generator composed with a depth-2 letter
  deeper.letter_depth = cfg.letter_depth + 1;
  PointCloud big = orbit_points(s, {origin(3)}, 2, deeper, 0.0);  // no dedup
  const Moebius& g2 = s.gens2.front().second;
  for (const CloudPoint& p : small.points) {
    Point image = g2.apply(p.at_infinity ? Point::infinity(3) : Point::finite(from_coords(3, p.x)));
    bool found = false;
    for (const CloudPoint& q : big.points) {
      Point qq = q.at_infinity ? Point::infinity(3) : Point::finite(from_coords(3, q.x));
      if (chordal_distance(image, qq) <= rho) {
        found = true;
        break;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("orbit points of length >= 2 lie in the length-1 image balls") {
  for (ExampleId id : {ExampleId::Example1, ExampleId::Example2, ExampleId::Example3}) {
    GroupSpec s = builtin_example(id);
    EnumConfig cfg;
    // seeds inside each open ball, off the fixed loci
    Eigen::VectorXd inside = Eigen::VectorXd::Zero(s.n);
    inside[0] = 0.3;
    inside[1] = 0.2;
    std::vector<Point> seeds = {Point::finite(from_coords(s.n, inside))};
    Enumeration en = enumerate_normal_forms(s, 3, cfg);
    std::vector<Ball> level1;
    for (const NormalForm& w : en.forms)
      if (w.length() == 1) {
        FormType t = form_type(w);
        Ball source = t.k == 1 ? s.sphere.b1() : s.sphere.b2();
        level1.push_back(image_ball(w.value, source));
      }
    REQUIRE(!level1.empty());
    for (const NormalForm& w : en.forms) {
      if (w.length() < 2) continue;
      FormType t = form_type(w);
      // an (m,k)-form image of a seed in B_k lands inside some length-1 ball
      Point seed = seeds.front();
      if (ball_contains_point(t.k == 1 ? s.sphere.b1() : s.sphere.b2(), seed) != Cert::Yes)
        continue;
      Point image = w.value.apply(seed);
      bool covered = false;
      for (const Ball& b : level1)
        if (ball_contains_point(b, image) == Cert::Yes) covered = true;
      CHECK(covered);
    }
  }
}

TEST_CASE("sphere translates with labels that replay") {
  GroupSpec s = builtin_example(ExampleId::Example1);
  EnumConfig cfg;
  SphereSet set = sphere_translates(s, 2, cfg);
  REQUIRE(set.entries.size() > 3);
  CHECK(set.entries.front().word == "id");
  bool found_g1g2 = false;
  for (const SphereRecord& r : set.entries) {
    CHECK(r.residual < 1e-9);
    // labels replay to the stored sphere
    if (r.word == "id") continue;
    Moebius g = parse_element_label(s, r.word);
    CHECK(spheres_equal(image_sphere(g, s.sphere.sphere), r.sphere, 1e-9));
    if (r.word == "g1 g2") {
      found_g1g2 = true;
      // radii shrink by a factor ~4 per syllable: sqrt(2)/4
      CHECK(r.sphere.radius == doctest::Approx(std::sqrt(2.0) / 4.0));
    }
  }
  CHECK(found_g1g2);

  // example 2 translates up to length 4 are pairwise non-crossing
  GroupSpec s2 = builtin_example(ExampleId::Example2);
  SphereSet set2 = sphere_translates(s2, 4, cfg);
  for (size_t i = 0; i < set2.entries.size(); ++i)
    for (size_t j = i + 1; j < set2.entries.size(); ++j)
      CHECK(spheres_disjoint(set2.entries[i].sphere, set2.entries[j].sphere, 1e-9) == Cert::Yes);

  // L = 0 exports only S
  SphereSet base = sphere_translates(s, 0, cfg);
  CHECK(base.entries.size() == 1);
}

TEST_CASE("attracting fixed points") {
  GroupSpec s2 = builtin_example(ExampleId::Example2);
  Moebius lox = s2.gens1.front().second.compose(s2.gens2.front().second);  // (11,5;2,1)
  Point fp = attracting_fixed_point(lox);
  REQUIRE(!fp.at_infinity);
  // quadratic-formula oracle: g1 g2 has the matrix (1,5;2,11) whose fixed
  // points solve 2x^2 + 10x - 5 = 0; the attracting one is the larger root
  double expect = (-10.0 + std::sqrt(100.0 + 40.0)) / 4.0;
  CHECK(point_coords(fp)[0] == doctest::Approx(expect).epsilon(1e-9));
  // the reversed composite carries (11,5;2,1) with the mirrored equation
  Moebius lox2 = s2.gens2.front().second.compose(s2.gens1.front().second);
  CHECK(point_coords(attracting_fixed_point(lox2))[0] ==
        doctest::Approx((10.0 + std::sqrt(140.0)) / 4.0).epsilon(1e-9));

  // the scaling word of example 1 contracts to the origin
  GroupSpec s1 = builtin_example(ExampleId::Example1);
  Moebius scale = s1.gens1.front().second.compose(s1.gens2.front().second);
  Point zero = attracting_fixed_point(scale);
  REQUIRE(!zero.at_infinity);
  CHECK(point_coords(zero).norm() < 1e-12);

  // parabolic input violates the precondition
  CHECK_THROWS_AS(attracting_fixed_point(s2.gens1.front().second), std::invalid_argument);
}

TEST_CASE("csv and ply exports") {
  GroupSpec s = builtin_example(ExampleId::Example2);
  EnumConfig cfg;
  PointCloud cloud = orbit_points(s, {origin(3)}, 1, cfg);
  std::ostringstream csv;
  write_csv(cloud, csv);
  CHECK(csv.str().substr(0, 20) == "x1,x2,x3,word_length");
  std::ostringstream lifted;
  write_csv(cloud, lifted, true);
  CHECK(lifted.str().substr(0, 5) == "x1,x2");
  std::ostringstream ply;
  write_ply(cloud, ply);
  CHECK(ply.str().substr(0, 3) == "ply");
  nlohmann::ordered_json js = spheres_json(sphere_translates(s, 1, cfg));
  CHECK(js["schema"] == "spheres_v1");
  CHECK(js["spheres"].size() > 1);
}
