#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vahlen/clifford.hpp"

namespace vahlen {

// A point of R^n compactified with infinity.  Finite points are paravectors.
struct Point {
  bool at_infinity = false;
  Clifford v;  // paravector, meaningful only when finite

  static Point infinity(int dim) {
    Point p;
    p.at_infinity = true;
    p.v = Clifford(dim);
    return p;
  }
  static Point finite(Clifford value) { return Point{false, std::move(value)}; }
  static Point finite(int dim, std::span<const double> coords) {
    return Point{false, Clifford::paravector(dim, coords)};
  }
  int dim() const { return v.dim(); }
};

// Chordal (spherical) metric on R^n + {infinity}:
//   d(x,y) = 2|x-y| / sqrt((1+|x|^2)(1+|y|^2)),  d(x,infinity) = 2/sqrt(1+|x|^2).
double chordal_distance(const Point& p, const Point& q);

// Hyperbolic distance in upper half-space coordinates.  Arguments are
// paravectors of the (n+1)-algebra whose e_n coefficient is the height (> 0).
double hyperbolic_distance(const Clifford& p, const Clifford& q);

double height_of(const Clifford& upper_point);  // e_n coefficient

// 2x2 Clifford (Vahlen) matrix acting on R^n + {infinity} by
// x -> (a x + b)(c x + d)^-1.  Normalized so the pseudo-determinant
// a rev(d) - b rev(c) equals 1 and the sign ambiguity g ~ -g is resolved
// deterministically (largest entry has positive leading coefficient).
class Moebius {
public:
  Moebius() = default;
  Moebius(Clifford a, Clifford b, Clifford c, Clifford d, bool validate = true);

  static Moebius identity(int dim);

  const Clifford& a() const { return a_; }
  const Clifford& b() const { return b_; }
  const Clifford& c() const { return c_; }
  const Clifford& d() const { return d_; }
  int dim() const { return a_.dim(); }

  Clifford pseudo_determinant() const;  // a rev(d) - b rev(c)

  Point apply(const Point& p) const;
  Point apply(const Clifford& paravec) const { return apply(Point::finite(paravec)); }

  // Poincare extension: same formula on a paravector of the (n+1)-algebra.
  // Preserves the sign of the e_n coefficient (the height).
  Clifford apply_upper(const Clifford& upper_point) const;

  Moebius compose(const Moebius& o) const;  // this after o;  matrix product
  Moebius inverse() const;                  // (rev d, -rev b; -rev c, rev a)

  bool fixes_infinity(double tol = 1e-12) const { return c_.norm() <= tol; }

  // Frobenius distance over blade coefficients to the nearer of +-identity.
  double distance_to_identity() const;
  bool is_identity(double eps = 1e-9) const { return distance_to_identity() <= eps; }
  bool projectively_equal(const Moebius& o, double eps = 1e-9) const;

  // Entry-wise Frobenius norm.
  double frobenius_norm() const;

  std::string to_string() const;

private:
  void normalize();
  Clifford a_, b_, c_, d_;
};

enum class MoebiusKind { Identity, Elliptic, Parabolic, Loxodromic, Unresolved };

std::string to_string(MoebiusKind k);

struct MoebiusClass {
  MoebiusKind kind = MoebiusKind::Unresolved;
  std::vector<Point> fixed_points;  // on the sphere at infinity, when located
  std::string detail;
};

struct ClassifyOptions {
  int iteration_budget = 10000;
  double contraction_tol = 1e-12;
  double fixed_point_tol = 1e-9;
  double separation_tol = 1e-6;  // distinct fixed points must be this far apart
  double eps_id = 1e-9;
  int max_finite_order = 24;
  double bounded_orbit_radius = 18.0;  // hyperbolic distance bound for elliptic orbits
};

// Classification per fixed-point count: identity; loxodromic (two fixed
// points on the boundary, none inside); parabolic (one, none inside);
// elliptic (fixed point in hyperbolic space).  Returns Unresolved rather
// than guessing when the iteration budget is exhausted.
MoebiusClass classify(const Moebius& g, const ClassifyOptions& opts = {});

}  // namespace vahlen
