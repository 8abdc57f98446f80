#include "vahlen/geometry.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vahlen {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// The band scales with the feature size entering the margin (radii, wall
// offsets) and is floored by double-precision noise on the coordinates, so
// a pair of well-separated microscopic spheres is still certifiable.
Cert banded_cert(double margin, double delta, double feature, double coords) {
  double band = std::max(delta * feature, 1e-12 * (1.0 + coords));
  if (margin > band) return Cert::Yes;
  if (margin < -band) return Cert::No;
  return Cert::Marginal;
}

Cert cert_from_margin(double margin, double delta) {
  return banded_cert(margin, delta, 1.0, 0.0);
}
}  // namespace

std::string to_string(Cert c) {
  switch (c) {
    case Cert::Yes: return "yes";
    case Cert::No: return "no";
    default: return "marginal";
  }
}

Eigen::VectorXd to_coords(const Clifford& paravec) {
  auto v = paravec.paravector_coords();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size()));
}

Clifford from_coords(int dim, const Eigen::VectorXd& x) {
  std::vector<double> v(x.data(), x.data() + x.size());
  return Clifford::paravector(dim, v);
}

Eigen::VectorXd point_coords(const Point& p) {
  if (p.at_infinity) throw std::domain_error("point at infinity has no coordinates");
  return to_coords(p.v);
}

Sphere Sphere::euclidean(Eigen::VectorXd center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  Sphere s;
  s.kind = Kind::Euclidean;
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

Sphere Sphere::plane(Eigen::VectorXd unit_normal, double offset) {
  double nm = unit_normal.norm();
  if (nm < 1e-12) throw std::invalid_argument("plane normal must be nonzero");
  Sphere s;
  s.kind = Kind::Plane;
  s.center = unit_normal / nm;
  s.radius = offset / nm;
  return s;
}

std::string Sphere::to_string() const {
  std::ostringstream os;
  if (kind == Kind::Euclidean)
    os << "sphere(center=" << center.transpose() << ", r=" << radius << ")";
  else
    os << "plane(normal=" << center.transpose() << ", offset=" << radius << ")";
  return os.str();
}

std::string Ball::to_string() const {
  return sphere.to_string() + (negative_side ? " [neg side]" : " [pos side]");
}

double signed_eval(const Sphere& s, const Point& p) {
  if (p.at_infinity) return s.kind == Sphere::Kind::Euclidean ? kInf : 0.0;
  Eigen::VectorXd x = point_coords(p);
  if (s.kind == Sphere::Kind::Euclidean) return (x - s.center).norm() - s.radius;
  return s.center.dot(x) - s.radius;
}

bool spheres_equal(const Sphere& a, const Sphere& b, double tol) {
  if (a.kind != b.kind) return false;
  if (a.kind == Sphere::Kind::Euclidean)
    return (a.center - b.center).norm() <= tol * (1.0 + a.radius) &&
           std::fabs(a.radius - b.radius) <= tol * (1.0 + a.radius);
  // plane normals may differ by sign
  double same = (a.center - b.center).norm() + std::fabs(a.radius - b.radius);
  double flip = (a.center + b.center).norm() + std::fabs(a.radius + b.radius);
  return std::min(same, flip) <= tol * (1.0 + std::fabs(a.radius));
}

Cert ball_contains_point(const Ball& b, const Point& p, double delta) {
  if (p.at_infinity) {
    if (b.sphere.kind == Sphere::Kind::Plane) return Cert::Marginal;  // on the sphere
    return b.negative_side ? Cert::No : Cert::Yes;
  }
  double e = signed_eval(b.sphere, p);
  double margin = b.negative_side ? -e : e;
  double feature = b.sphere.kind == Sphere::Kind::Euclidean ? b.sphere.radius
                                                            : 1.0 + std::fabs(b.sphere.radius);
  double coords = point_coords(p).norm() +
                  (b.sphere.kind == Sphere::Kind::Euclidean ? b.sphere.center.norm() : 0.0);
  return banded_cert(margin, delta, feature, coords);
}

PairSide which_side(const BallPair& bp, const Point& p, double delta) {
  double e = signed_eval(bp.sphere, p);
  if (std::isinf(e)) return bp.b1_negative ? PairSide::B2 : PairSide::B1;
  if (std::fabs(e) <= delta) return PairSide::Boundary;
  bool negative = e < 0.0;
  return (negative == bp.b1_negative) ? PairSide::B1 : PairSide::B2;
}

namespace {

// Normalized planar half-space {u.x <= s}.
struct HalfSpace {
  Eigen::VectorXd u;
  double s;
};

HalfSpace as_halfspace(const Ball& b) {
  if (b.negative_side) return {b.sphere.center, b.sphere.radius};
  return {-b.sphere.center, -b.sphere.radius};
}

}  // namespace

namespace {
// Open sets that touch only along boundaries are genuinely disjoint, so an
// exactly-zero margin (tangency computed without round-off) is a Yes.
Cert open_cert(double margin, double delta) {
  if (margin == 0.0) return Cert::Yes;
  return cert_from_margin(margin, delta);
}
}  // namespace

Cert interiors_disjoint(const Ball& a, const Ball& b, double delta) {
  const bool ae = a.sphere.kind == Sphere::Kind::Euclidean;
  const bool be = b.sphere.kind == Sphere::Kind::Euclidean;
  if (ae && be) {
    double d = (a.sphere.center - b.sphere.center).norm();
    double ra = a.sphere.radius, rb = b.sphere.radius;
    double feature = ra + rb;
    double coords = a.sphere.center.norm() + b.sphere.center.norm();
    double m;
    if (a.negative_side && b.negative_side) m = d - ra - rb;
    else if (a.negative_side && !b.negative_side) m = rb - d - ra;
    else if (!a.negative_side && b.negative_side) m = ra - d - rb;
    else return Cert::No;  // two exteriors always share a neighbourhood of infinity
    if (m == 0.0) return Cert::Yes;  // exactly tangent open sets are disjoint
    return banded_cert(m, delta, feature, coords);
  }
  if (!ae && !be) {
    HalfSpace ha = as_halfspace(a), hb = as_halfspace(b);
    double align = ha.u.dot(hb.u);
    if (align < -1.0 + 1e-9) return open_cert(-(ha.s + hb.s), delta);
    return Cert::No;
  }
  // one Euclidean, one planar
  const Ball& eb = ae ? a : b;
  const Ball& pb = ae ? b : a;
  HalfSpace h = as_halfspace(pb);
  if (!eb.negative_side) return Cert::No;  // exterior meets every half-space
  double reach = h.u.dot(eb.sphere.center) - h.s;  // >0 when center beyond the wall
  return open_cert(reach - eb.sphere.radius, delta);
}

namespace {
// Containment margin for closed balls: positive means inner sits inside
// outer with that much slack, -infinity means structurally impossible.
double containment_margin(const Ball& outer, const Ball& inner) {
  const bool oe = outer.sphere.kind == Sphere::Kind::Euclidean;
  const bool ie = inner.sphere.kind == Sphere::Kind::Euclidean;
  if (oe && ie) {
    double d = (outer.sphere.center - inner.sphere.center).norm();
    double ro = outer.sphere.radius, ri = inner.sphere.radius;
    if (outer.negative_side && inner.negative_side) return ro - d - ri;
    if (outer.negative_side && !inner.negative_side) return -kInf;
    if (!outer.negative_side && inner.negative_side) return d - ro - ri;
    return ri - d - ro;
  }
  if (oe && !ie) {
    if (outer.negative_side) return -kInf;  // half-space is unbounded
    HalfSpace h = as_halfspace(inner);
    double reach = h.u.dot(outer.sphere.center) - h.s;
    return reach - outer.sphere.radius;
  }
  if (!oe && ie) {
    HalfSpace h = as_halfspace(outer);
    if (!inner.negative_side) return -kInf;
    double top = h.u.dot(inner.sphere.center) + inner.sphere.radius;
    return h.s - top;
  }
  HalfSpace ho = as_halfspace(outer), hi = as_halfspace(inner);
  double align = ho.u.dot(hi.u);
  if (align > 1.0 - 1e-9) return ho.s - hi.s;
  return -kInf;
}
}  // namespace

namespace {
double pair_feature(const Ball& a, const Ball& b) {
  auto f = [](const Ball& x) {
    return x.sphere.kind == Sphere::Kind::Euclidean ? x.sphere.radius
                                                    : 1.0 + std::fabs(x.sphere.radius);
  };
  return f(a) + f(b);
}
double pair_coords(const Ball& a, const Ball& b) {
  auto f = [](const Ball& x) {
    return x.sphere.kind == Sphere::Kind::Euclidean ? x.sphere.center.norm()
                                                    : std::fabs(x.sphere.radius);
  };
  return f(a) + f(b);
}
}  // namespace

Cert ball_contains(const Ball& outer, const Ball& inner, double delta) {
  double m = containment_margin(outer, inner);
  if (m == -kInf) return Cert::No;
  if (m == 0.0) return Cert::Yes;  // closed containment holds when touching
  return banded_cert(m, delta, pair_feature(outer, inner), pair_coords(outer, inner));
}

Cert ball_contains_strictly(const Ball& outer, const Ball& inner, double delta) {
  double m = containment_margin(outer, inner);
  if (m == -kInf) return Cert::No;
  return banded_cert(m, delta, pair_feature(outer, inner), pair_coords(outer, inner));
}

Cert spheres_disjoint(const Sphere& a, const Sphere& b, double delta) {
  const bool ae = a.kind == Sphere::Kind::Euclidean;
  const bool be = b.kind == Sphere::Kind::Euclidean;
  if (ae && be) {
    double d = (a.center - b.center).norm();
    double outside = d - (a.radius + b.radius);
    double nested = std::fabs(a.radius - b.radius) - d;
    return banded_cert(std::max(outside, nested), delta, a.radius + b.radius,
                       a.center.norm() + b.center.norm());
  }
  if (ae != be) {
    const Sphere& e = ae ? a : b;
    const Sphere& p = ae ? b : a;
    double h = std::fabs(p.center.dot(e.center) - p.radius);
    return banded_cert(h - e.radius, delta, e.radius + 1.0 + std::fabs(p.radius),
                       e.center.norm());
  }
  return Cert::No;  // two planar spheres share the point at infinity
}

Cert sphere_in_open_ball(const Sphere& s, const Ball& b, double delta) {
  const bool se = s.kind == Sphere::Kind::Euclidean;
  const bool be = b.sphere.kind == Sphere::Kind::Euclidean;
  if (se && be) {
    double d = (s.center - b.sphere.center).norm();
    double feature = s.radius + b.sphere.radius;
    double coords = s.center.norm() + b.sphere.center.norm();
    if (b.negative_side)
      return banded_cert(b.sphere.radius - d - s.radius, delta, feature, coords);
    return banded_cert(std::fabs(d - s.radius) - b.sphere.radius, delta, feature, coords);
  }
  if (se && !be) {
    HalfSpace h = as_halfspace(b);
    double top = h.u.dot(s.center) + s.radius;
    return banded_cert(h.s - top, delta, s.radius + 1.0 + std::fabs(h.s), s.center.norm());
  }
  // planar sphere contains infinity, so only the exterior of a Euclidean
  // ball can swallow it
  if (!se && be) {
    if (b.negative_side) return Cert::No;
    double h = std::fabs(s.center.dot(b.sphere.center) - s.radius);
    return banded_cert(h - b.sphere.radius, delta, b.sphere.radius + 1.0 + std::fabs(s.radius),
                       b.sphere.center.norm());
  }
  return Cert::No;
}

Eigen::VectorXd SimilarityDecomposition::apply(const Eigen::VectorXd& x) const {
  if (!inversive) return scale * (rotation * x) + translation;
  Eigen::VectorXd y = x - pole;
  double q = y.squaredNorm();
  return image_of_infinity + (inversion_radius * inversion_radius / q) * (rotation * y);
}

SimilarityDecomposition decompose(const Moebius& g) {
  int n = g.dim();
  SimilarityDecomposition dec;
  if (g.fixes_infinity()) {
    dec.inversive = false;
    Clifford dinv = g.d().inverse();
    Eigen::MatrixXd lin(n, n);
    for (int j = 0; j < n; ++j) {
      Clifford u = (j == 0) ? Clifford::scalar(n, 1.0) : Clifford::generator(n, j);
      lin.col(j) = to_coords(g.a() * u * dinv);
    }
    dec.translation = to_coords(g.b() * dinv);
    dec.scale = lin.col(0).norm();
    dec.rotation = lin / dec.scale;
    if ((dec.rotation.transpose() * dec.rotation - Eigen::MatrixXd::Identity(n, n)).norm() > 1e-10)
      throw std::domain_error("linear part is not a similarity");
    return dec;
  }
  dec.inversive = true;
  dec.pole = point_coords(g.inverse().apply(Point::infinity(n)));
  dec.image_of_infinity = point_coords(g.apply(Point::infinity(n)));
  dec.inversion_radius = 1.0 / g.c().norm();
  // algebraic rotation part: with y = x - pole,
  //   g(x) = g(inf) + B0 conj(y) c^-1 / |y|^2,   B0 = b - a c^-1 d.
  // The Vahlen conditions force B0 = -rev(c)^-1 (c rev(d) is a vector, so
  // c rev(d) = d rev(c)), which gives the cancellation-free column formula
  //   A(u) = -main(c) conj(u) conj(c) / |c|^2.
  Clifford mc = g.c().main_involution();
  Clifford cc = g.c().conjugation();
  double c2 = g.c().norm_sq();
  Eigen::MatrixXd rot(n, n);
  for (int j = 0; j < n; ++j) {
    Clifford u = (j == 0) ? Clifford::scalar(n, 1.0) : Clifford::generator(n, j);
    rot.col(j) = to_coords(mc * u.conjugation() * cc) * (-1.0 / c2);
  }
  dec.rotation = rot;
  if ((rot.transpose() * rot - Eigen::MatrixXd::Identity(n, n)).norm() > 1e-10)
    throw std::domain_error("inversive rotation part is not orthogonal");
  return dec;
}

Sphere isometric_sphere(const Moebius& g) {
  if (g.fixes_infinity()) throw std::domain_error("isometric sphere undefined: g fixes infinity");
  Eigen::VectorXd center = point_coords(g.inverse().apply(Point::infinity(g.dim())));
  return Sphere::euclidean(center, 1.0 / g.c().norm());
}

namespace {

Sphere translate_sphere(const Sphere& s, const Eigen::VectorXd& v) {
  Sphere r = s;
  if (s.kind == Sphere::Kind::Euclidean)
    r.center = s.center + v;
  else
    r.radius = s.radius + s.center.dot(v);
  return r;
}

Sphere rotate_sphere(const Sphere& s, const Eigen::MatrixXd& a) {
  Sphere r = s;
  r.center = a * s.center;
  return r;
}

Sphere scale_sphere(const Sphere& s, double lambda) {
  Sphere r = s;
  if (s.kind == Sphere::Kind::Euclidean) {
    r.center = lambda * s.center;
    r.radius = lambda * s.radius;
  } else {
    r.radius = lambda * s.radius;
  }
  return r;
}

// Image under x -> r2 * x / |x|^2.
Sphere invert_sphere_origin(const Sphere& s, double r2) {
  if (s.kind == Sphere::Kind::Euclidean) {
    double q = s.center.squaredNorm() - s.radius * s.radius;
    double scale = s.center.squaredNorm() + s.radius * s.radius;
    if (std::fabs(q) <= 1e-12 * (1.0 + scale)) {
      // sphere through the origin becomes a plane
      Eigen::VectorXd u = s.center / s.center.norm();
      return Sphere::plane(u, r2 / (2.0 * s.center.norm()));
    }
    return Sphere::euclidean((r2 / q) * s.center, r2 * s.radius / std::fabs(q));
  }
  if (std::fabs(s.radius) <= 1e-12) return s;  // plane through the origin is preserved
  Eigen::VectorXd center = (r2 / (2.0 * s.radius)) * s.center;
  return Sphere::euclidean(center, r2 / (2.0 * std::fabs(s.radius)));
}

}  // namespace

Sphere image_sphere(const Moebius& g, const Sphere& s) {
  SimilarityDecomposition dec = decompose(g);
  if (!dec.inversive)
    return translate_sphere(scale_sphere(rotate_sphere(s, dec.rotation), dec.scale),
                            dec.translation);
  Sphere r = translate_sphere(s, -dec.pole);
  r = invert_sphere_origin(r, dec.inversion_radius * dec.inversion_radius);
  r = rotate_sphere(r, dec.rotation);
  return translate_sphere(r, dec.image_of_infinity);
}

Ball image_ball(const Moebius& g, const Ball& b) {
  Sphere im = image_sphere(g, b.sphere);
  int n = g.dim();
  // deterministic interior probes of b
  std::vector<Point> probes;
  if (b.sphere.kind == Sphere::Kind::Euclidean) {
    if (b.negative_side) {
      probes.push_back(Point::finite(from_coords(n, b.sphere.center)));
      Eigen::VectorXd shift = b.sphere.center;
      shift[0] += 0.5 * b.sphere.radius;
      probes.push_back(Point::finite(from_coords(n, shift)));
    } else {
      probes.push_back(Point::infinity(n));
      Eigen::VectorXd far = b.sphere.center;
      far[0] += 3.0 * b.sphere.radius + 1.0;
      probes.push_back(Point::finite(from_coords(n, far)));
    }
  } else {
    double sign = b.negative_side ? -1.0 : 1.0;
    for (double step : {1.0, 2.0}) {
      Eigen::VectorXd p = (b.sphere.radius + sign * step) * b.sphere.center;
      probes.push_back(Point::finite(from_coords(n, p)));
    }
  }
  for (const Point& probe : probes) {
    Point q = g.apply(probe);
    if (q.at_infinity) {
      if (im.kind == Sphere::Kind::Plane) continue;
      return Ball{im, false};
    }
    double e = signed_eval(im, q);
    if (std::fabs(e) > 1e-9 * (1.0 + std::fabs(im.radius)))
      return Ball{im, e < 0.0};
  }
  throw std::runtime_error("image_ball: could not resolve the image side");
}

double chordal_diameter(const Sphere& s) {
  if (s.kind == Sphere::Kind::Plane) return 2.0 / std::sqrt(1.0 + s.radius * s.radius);
  double c = s.center.norm(), r = s.radius;
  double hi = 1.0 + (c + r) * (c + r);
  double lo = 1.0 + (c - r) * (c - r);
  return 4.0 * r / std::sqrt(hi * lo);
}

double chordal_diameter(const Ball& b) {
  // the chordal antipode map x -> -x/|x|^2, applied to the ball
  Sphere anti = invert_sphere_origin(b.sphere, 1.0);
  anti.center = -anti.center;
  if (anti.kind == Sphere::Kind::Plane) anti.radius = -anti.radius;
  // resolve the antipodal ball side with a probe interior point
  Eigen::VectorXd probe;
  if (b.sphere.kind == Sphere::Kind::Euclidean) {
    probe = b.sphere.center;
    if (b.negative_side && probe.norm() < 1e-9) probe[0] += 0.5 * b.sphere.radius;
    if (!b.negative_side) probe = b.sphere.center + Eigen::VectorXd::Unit(b.sphere.dim(), 0) *
                                                        (2.0 * b.sphere.radius + 1.0);
  } else {
    double side = b.negative_side ? -1.0 : 1.0;
    probe = (b.sphere.radius + side) * b.sphere.center;
    if (probe.norm() < 1e-9) probe += 0.25 * side * b.sphere.center;
  }
  int n = static_cast<int>(probe.size());
  Eigen::VectorXd anti_probe = -probe / probe.squaredNorm();
  Ball anti_ball{anti, signed_eval(anti, Point::finite(from_coords(n, anti_probe))) < 0.0};
  if (interiors_disjoint(b, anti_ball, 1e-12) == Cert::Yes) return chordal_diameter(b.sphere);
  return 2.0;
}

bool DirichletHalfSpace::contains_upper(const Clifford& upper_point, double tol) const {
  Eigen::VectorXd y = to_coords(upper_point);  // n+1 coordinates, height last
  int n = static_cast<int>(wall.center.size());
  if (wall.kind == Sphere::Kind::Euclidean) {
    double d2 = (y.head(n) - wall.center).squaredNorm() + y[n] * y[n];
    double e = d2 - wall.radius * wall.radius;
    return keep_negative ? e <= tol : e >= -tol;
  }
  double e = wall.center.dot(y.head(n)) - wall.radius;
  return keep_negative ? e <= tol : e >= -tol;
}

DirichletHalfSpace dirichlet_halfspace(const Clifford& a_upper, const Moebius& g) {
  int n = g.dim();
  Clifford ga = g.apply_upper(a_upper);
  if ((ga - a_upper).norm() <= 1e-12 * (1.0 + a_upper.norm()))
    throw std::domain_error("degenerate bisector: g fixes the base point");
  Eigen::VectorXd p = to_coords(a_upper), q = to_coords(ga);
  double ph = p[n], qh = q[n];
  DirichletHalfSpace out;
  if (std::fabs(ph - qh) <= 1e-12 * (ph + qh)) {
    Eigen::VectorXd w = (q - p).head(n);
    double offset = (q.squaredNorm() - p.squaredNorm()) / (2.0 * w.norm());
    out.wall = Sphere::plane(w / w.norm(), offset);
    out.keep_negative = true;  // {u.y <= s} contains a
    return out;
  }
  Eigen::VectorXd c_full = (qh * p - ph * q) / (qh - ph);
  double rad2 = c_full.squaredNorm() - (qh * p.squaredNorm() - ph * q.squaredNorm()) / (qh - ph);
  if (rad2 <= 0.0) throw std::domain_error("degenerate bisector wall");
  out.wall = Sphere::euclidean(c_full.head(n), std::sqrt(rad2));
  out.keep_negative = qh > ph;
  return out;
}

Cert peak_domain_disjoint(const PeakDomain& u, const Sphere& s, double delta) {
  int n = u.conjugator.dim();
  if (u.rank < 1 || u.rank > n - 1) throw std::invalid_argument("peak domain rank out of range");
  // The closure of U_z touches z itself; a sphere through z is never missed.
  Point z = u.conjugator.inverse().apply(Point::infinity(n));
  double at_z = z.at_infinity ? (s.kind == Sphere::Kind::Plane ? 0.0 : kInf)
                              : std::fabs(signed_eval(s, z));
  if (at_z <= delta) return Cert::No;

  Sphere hs = image_sphere(u.conjugator, s);
  int trailing = n - u.rank;
  double qmax;
  if (hs.kind == Sphere::Kind::Euclidean) {
    double proj = hs.center.tail(trailing).norm();
    qmax = (proj + hs.radius) * (proj + hs.radius);
  } else {
    // plane: bounded in the trailing coordinates only when they are spanned
    // by the normal direction
    double head = hs.center.head(n - trailing).norm();
    if (trailing == 1 && head <= 1e-12) {
      qmax = hs.radius * hs.radius;
    } else {
      return Cert::No;  // unbounded in the trailing coordinates
    }
  }
  return cert_from_margin(u.threshold - qmax, delta * (1.0 + u.threshold));
}

EuclideanForm euclidean_form(const Moebius& g) {
  if (!g.fixes_infinity()) throw std::invalid_argument("euclidean_form needs c == 0");
  SimilarityDecomposition dec = decompose(g);
  EuclideanForm f;
  f.rotation = dec.rotation;
  f.translation = dec.translation;
  f.scale = dec.scale;
  return f;
}

TranslationLattice translation_rank(const std::vector<Moebius>& gens, int depth, double tol) {
  if (gens.empty()) return {};
  int n = gens.front().dim();
  std::vector<EuclideanForm> gen_forms;
  for (const Moebius& g : gens) {
    EuclideanForm f = euclidean_form(g);
    if (std::fabs(f.scale - 1.0) > tol)
      throw std::invalid_argument("translation_rank: generator is not a Euclidean isometry");
    gen_forms.push_back(f);
    EuclideanForm fi;
    fi.rotation = f.rotation.transpose();
    fi.translation = -(f.rotation.transpose() * f.translation);
    fi.scale = 1.0;
    gen_forms.push_back(fi);
  }

  auto key_equal = [&](const EuclideanForm& a, const EuclideanForm& b) {
    return (a.rotation - b.rotation).norm() + (a.translation - b.translation).norm() <= 1e-8;
  };

  std::vector<EuclideanForm> seen;
  EuclideanForm id;
  id.rotation = Eigen::MatrixXd::Identity(n, n);
  id.translation = Eigen::VectorXd::Zero(n);
  seen.push_back(id);
  std::deque<std::pair<EuclideanForm, int>> todo;
  todo.emplace_back(id, 0);

  TranslationLattice lat;
  std::vector<Eigen::VectorXd> translations;
  const size_t budget = 20000;
  while (!todo.empty()) {
    auto [cur, d] = todo.front();
    todo.pop_front();
    if (d >= depth) continue;
    for (const EuclideanForm& g : gen_forms) {
      EuclideanForm next;
      next.rotation = g.rotation * cur.rotation;
      next.translation = g.rotation * cur.translation + g.translation;
      next.scale = 1.0;
      bool fresh = true;
      for (const auto& s : seen)
        if (key_equal(s, next)) {
          fresh = false;
          break;
        }
      if (!fresh) continue;
      seen.push_back(next);
      todo.emplace_back(next, d + 1);
      if ((next.rotation - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-8 &&
          next.translation.norm() > tol)
        translations.push_back(next.translation);
      if (seen.size() > budget) {
        lat.truncated = true;
        todo.clear();
        break;
      }
    }
  }

  // greedy basis: shortest translations first, keep the independent ones
  std::sort(translations.begin(), translations.end(),
            [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return a.norm() < b.norm(); });
  Eigen::MatrixXd basis(n, 0);
  for (const auto& t : translations) {
    Eigen::MatrixXd cand(n, basis.cols() + 1);
    if (basis.cols() > 0) cand.leftCols(basis.cols()) = basis;
    cand.col(basis.cols()) = t;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cand);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > 1e-8 * svd.singularValues()[0]) ++rank;
    if (rank == cand.cols()) {
      basis = cand;
      lat.basis.push_back(t);
    }
  }
  lat.rank = static_cast<int>(lat.basis.size());
  return lat;
}

}  // namespace vahlen
