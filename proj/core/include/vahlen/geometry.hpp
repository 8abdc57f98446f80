#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "vahlen/moebius.hpp"

namespace vahlen {

// Tri-state verdict for geometric predicates: numerical noise inside the
// tolerance band must never be promoted to a mathematical claim.
enum class Cert { Yes, No, Marginal };

std::string to_string(Cert c);

Eigen::VectorXd to_coords(const Clifford& paravec);
Clifford from_coords(int dim, const Eigen::VectorXd& x);
Eigen::VectorXd point_coords(const Point& p);  // throws on infinity

// Round codimension-1 sphere in R^n + {infinity}: either a Euclidean sphere
// (center, radius) or a hyperplane u.x = s together with the point at
// infinity.
struct Sphere {
  enum class Kind { Euclidean, Plane };
  Kind kind = Kind::Euclidean;
  Eigen::VectorXd center;  // Euclidean center, or unit plane normal
  double radius = 1.0;     // radius > 0, or plane offset

  static Sphere euclidean(Eigen::VectorXd center, double radius);
  static Sphere plane(Eigen::VectorXd unit_normal, double offset);
  int dim() const { return static_cast<int>(center.size()); }
  bool is_plane() const { return kind == Kind::Plane; }
  std::string to_string() const;
};

// Signed evaluation: negative inside/below, zero on the sphere.
// Infinity evaluates to +infinity for Euclidean spheres and to 0 for planes
// (infinity lies on every planar sphere).
double signed_eval(const Sphere& s, const Point& p);

bool spheres_equal(const Sphere& a, const Sphere& b, double tol = 1e-9);

// One of the two closed balls bounded by a sphere.  negative_side means
// {|x-c| <= r} for Euclidean spheres and {u.x <= s} for planes.  Planar
// balls contain infinity only on their boundary.
struct Ball {
  Sphere sphere;
  bool negative_side = true;
  bool contains_infinity_interior() const {
    return sphere.kind == Sphere::Kind::Euclidean && !negative_side;
  }
  Ball complement() const { return Ball{sphere, !negative_side}; }
  std::string to_string() const;
};

// A sphere together with its two complementary closed balls B1, B2.
struct BallPair {
  Sphere sphere;
  bool b1_negative = false;
  Ball b1() const { return Ball{sphere, b1_negative}; }
  Ball b2() const { return Ball{sphere, !b1_negative}; }
};

enum class PairSide { B1, B2, Boundary };

Cert ball_contains_point(const Ball& b, const Point& p, double delta = 1e-9);
PairSide which_side(const BallPair& bp, const Point& p, double delta = 1e-9);

// Do the open balls (interiors) meet?  Yes means certified disjoint.
Cert interiors_disjoint(const Ball& a, const Ball& b, double delta = 1e-9);
// Closed containment outer >= inner.
Cert ball_contains(const Ball& outer, const Ball& inner, double delta = 1e-9);
// Containment of inner in the interior of outer (strict).
Cert ball_contains_strictly(const Ball& outer, const Ball& inner, double delta = 1e-9);
// Spheres as point sets (infinity included for planes).
Cert spheres_disjoint(const Sphere& a, const Sphere& b, double delta = 1e-9);
// Sphere contained in the open ball.
Cert sphere_in_open_ball(const Sphere& s, const Ball& b, double delta = 1e-9);

// Similarity decomposition of a Moebius transformation:
//   affine    g(x) = scale * A (x) + t                      (c == 0)
//   inversive g(x) = a + r^2 A (x - b) / |x - b|^2          (c != 0)
// with A orthogonal, b = g^-1(infinity), r the isometric-sphere radius.
struct SimilarityDecomposition {
  bool inversive = false;
  Eigen::MatrixXd rotation;
  double scale = 1.0;               // affine only
  Eigen::VectorXd translation;      // affine only
  Eigen::VectorXd pole;             // b
  Eigen::VectorXd image_of_infinity;  // a
  double inversion_radius = 1.0;    // r
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

SimilarityDecomposition decompose(const Moebius& g);

// Isometric sphere of g: center g^-1(infinity), radius 1/|c|.
// Throws std::domain_error when g fixes infinity.
Sphere isometric_sphere(const Moebius& g);

// Exact closed-form image of a round sphere under a Moebius transformation.
Sphere image_sphere(const Moebius& g, const Sphere& s);
// Image of a ball; the side is resolved by mapping an interior probe point.
Ball image_ball(const Moebius& g, const Ball& b);

// Diameter of a sphere in the chordal metric, in closed form via the
// stereographic lift (the two extremal lift points are antipodal on the
// lifted circle).
double chordal_diameter(const Sphere& s);
// Diameter of a closed ball: the boundary diameter when the lifted cap is
// at most a hemisphere, 2 when the ball contains a chordal-antipodal pair.
double chordal_diameter(const Ball& b);

// Dirichlet half-space {y in H^{n+1} : d_h(y,a) <= d_h(y,g(a))}, stored by
// its totally geodesic wall, a round sphere of R^n (hemisphere wall) or a
// vertical plane.
struct DirichletHalfSpace {
  Sphere wall;            // in R^n coordinates
  bool keep_negative;     // half-space side, in the sense of Ball
  bool contains_upper(const Clifford& upper_point, double tol = 0.0) const;
};

// a and g(a) must be distinct points of the upper half-space; a is given as
// a paravector of the (n+1)-algebra with positive e_n coefficient.
DirichletHalfSpace dirichlet_halfspace(const Clifford& a_upper, const Moebius& g);

// Peak domain U_z = h^-1 { x : sum of the last (n-rank) squared coordinates > t }
// at the point z = h^-1(infinity).
struct PeakDomain {
  Moebius conjugator;  // h with h(z) = infinity
  int rank = 1;        // 1 <= rank <= n-1
  double threshold = 1.0;
};

// Desk-scale test that the (open) peak domain misses the sphere S, with the
// conservative extra requirement that the closure point z stays off S.
Cert peak_domain_disjoint(const PeakDomain& u, const Sphere& s, double delta = 1e-9);

// A Moebius transformation fixing infinity as x -> scale * A x + t.
struct EuclideanForm {
  Eigen::MatrixXd rotation;
  Eigen::VectorXd translation;
  double scale = 1.0;
};
EuclideanForm euclidean_form(const Moebius& g);  // requires c == 0

struct TranslationLattice {
  int rank = 0;
  std::vector<Eigen::VectorXd> basis;
  bool truncated = false;
};

// Rank of the translation lattice of the finite-index free abelian subgroup
// of <gens>; every generator must fix infinity and be a Euclidean isometry.
// Products are searched up to the given depth.
TranslationLattice translation_rank(const std::vector<Moebius>& gens, int depth = 8,
                                    double tol = 1e-9);

}  // namespace vahlen
