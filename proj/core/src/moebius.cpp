#include "vahlen/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vahlen {

double chordal_distance(const Point& p, const Point& q) {
  if (p.at_infinity && q.at_infinity) return 0.0;
  if (p.at_infinity) return 2.0 / std::sqrt(1.0 + q.v.norm_sq());
  if (q.at_infinity) return 2.0 / std::sqrt(1.0 + p.v.norm_sq());
  double num = 2.0 * (p.v - q.v).norm();
  return num / std::sqrt((1.0 + p.v.norm_sq()) * (1.0 + q.v.norm_sq()));
}

double height_of(const Clifford& upper_point) {
  int n1 = upper_point.dim();
  return upper_point.coeff(1u << (n1 - 2));
}

double hyperbolic_distance(const Clifford& p, const Clifford& q) {
  double hp = height_of(p), hq = height_of(q);
  if (hp <= 0.0 || hq <= 0.0) throw std::domain_error("points must have positive height");
  double e = (p - q).norm();
  return 2.0 * std::asinh(0.5 * e / std::sqrt(hp * hq));
}

Moebius::Moebius(Clifford a, Clifford b, Clifford c, Clifford d, bool validate)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  int n = a_.dim();
  if (b_.dim() != n || c_.dim() != n || d_.dim() != n)
    throw std::invalid_argument("matrix entries must share one algebra");
  normalize();
  if (validate) {
    const double tol = 1e-7;
    Clifford det = pseudo_determinant();
    if (!det.is_real(tol) || std::fabs(det.scalar_part() - 1.0) > 1e-6)
      throw std::invalid_argument("pseudo-determinant is not 1: " + det.to_string());
    for (const Clifford* e : {&a_, &b_, &c_, &d_}) {
      if (!e->is_zero(tol) && !e->is_clifford_group(1e-6))
        throw std::invalid_argument("entry neither zero nor in the Clifford group: " +
                                    e->to_string());
    }
    if (!(a_ * b_.reversion()).is_paravector(tol) || !(c_ * d_.reversion()).is_paravector(tol))
      throw std::invalid_argument("a rev(b) or c rev(d) is not a vector");
  }
}

Moebius Moebius::identity(int dim) {
  return Moebius(Clifford::scalar(dim, 1.0), Clifford(dim), Clifford(dim),
                 Clifford::scalar(dim, 1.0), false);
}

Clifford Moebius::pseudo_determinant() const {
  return a_ * d_.reversion() - b_ * c_.reversion();
}

void Moebius::normalize() {
  Clifford det = pseudo_determinant();
  double s = det.scalar_part();
  if (det.is_real(1e-6) && s > 0.0 && std::fabs(s - 1.0) > 1e-15) {
    double f = 1.0 / std::sqrt(s);
    a_ *= f;
    b_ *= f;
    c_ *= f;
    d_ *= f;
  }
  // Resolve g ~ -g: the entry of largest norm gets a nonnegative leading
  // (first nonzero, in blade order, largest-norm-entry) coefficient.
  const Clifford* entries[4] = {&a_, &b_, &c_, &d_};
  int best = 0;
  double best_norm = -1.0;
  for (int i = 0; i < 4; ++i) {
    double nm = entries[i]->norm();
    if (nm > best_norm + 1e-15) {
      best_norm = nm;
      best = i;
    }
  }
  if (best_norm <= 0.0) return;
  const Clifford& lead = *entries[best];
  for (int m = 0; m < lead.blade_count(); ++m) {
    double c = lead.coeff(static_cast<unsigned>(m));
    if (std::fabs(c) > 1e-12 * (1.0 + best_norm)) {
      if (c < 0.0) {
        a_ *= -1.0;
        b_ *= -1.0;
        c_ *= -1.0;
        d_ *= -1.0;
      }
      return;
    }
  }
}

Point Moebius::apply(const Point& p) const {
  int n = dim();
  if (p.at_infinity) {
    if (fixes_infinity()) return Point::infinity(n);
    return Point::finite(a_ * c_.inverse());
  }
  const Clifford& x = p.v;
  Clifford den = c_ * x + d_;
  double scale = (1.0 + x.norm()) * (c_.norm() + d_.norm());
  if (den.norm() <= 1e-13 * std::max(1.0, scale)) return Point::infinity(n);
  Clifford num = a_ * x + b_;
  return Point::finite(num * den.inverse());
}

Clifford Moebius::apply_upper(const Clifford& upper_point) const {
  int n1 = upper_point.dim();
  if (n1 != dim() + 1)
    throw std::invalid_argument("upper half-space point lives in the (n+1)-algebra");
  Clifford a = a_.embedded(n1), b = b_.embedded(n1), c = c_.embedded(n1), d = d_.embedded(n1);
  Clifford den = c * upper_point + d;
  Clifford num = a * upper_point + b;
  return num * den.inverse();
}

Moebius Moebius::compose(const Moebius& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("dimension mismatch");
  return Moebius(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                 c_ * o.b_ + d_ * o.d_, false);
}

Moebius Moebius::inverse() const {
  return Moebius(d_.reversion(), -(b_.reversion()), -(c_.reversion()), a_.reversion(), false);
}

double Moebius::frobenius_norm() const {
  return std::sqrt(a_.norm_sq() + b_.norm_sq() + c_.norm_sq() + d_.norm_sq());
}

double Moebius::distance_to_identity() const {
  int n = dim();
  Clifford one = Clifford::scalar(n, 1.0);
  auto dist = [&](double sign) {
    Clifford da = a_ - one * sign;
    Clifford dd = d_ - one * sign;
    return std::sqrt(da.norm_sq() + b_.norm_sq() + c_.norm_sq() + dd.norm_sq());
  };
  return std::min(dist(1.0), dist(-1.0));
}

bool Moebius::projectively_equal(const Moebius& o, double eps) const {
  if (dim() != o.dim()) return false;
  double scale = 1.0 + std::max(frobenius_norm(), o.frobenius_norm());
  auto diff = [&](double sign) {
    return std::sqrt((a_ - o.a_ * sign).norm_sq() + (b_ - o.b_ * sign).norm_sq() +
                     (c_ - o.c_ * sign).norm_sq() + (d_ - o.d_ * sign).norm_sq());
  };
  return std::min(diff(1.0), diff(-1.0)) <= eps * scale;
}

std::string Moebius::to_string() const {
  std::ostringstream os;
  os << "[" << a_.to_string() << ", " << b_.to_string() << "; " << c_.to_string() << ", "
     << d_.to_string() << "]";
  return os.str();
}

std::string to_string(MoebiusKind k) {
  switch (k) {
    case MoebiusKind::Identity: return "identity";
    case MoebiusKind::Elliptic: return "elliptic";
    case MoebiusKind::Parabolic: return "parabolic";
    case MoebiusKind::Loxodromic: return "loxodromic";
    default: return "unresolved";
  }
}

namespace {

// Linear part of an infinity-fixing map as an n x n matrix over the
// paravector coordinates, plus the translation.
struct AffineForm {
  std::vector<double> lin;  // row-major n x n
  std::vector<double> trans;
  int n;
};

AffineForm affine_form(const Moebius& g) {
  int n = g.dim();
  AffineForm f;
  f.n = n;
  f.lin.assign(static_cast<size_t>(n) * n, 0.0);
  Clifford dinv = g.d().inverse();
  for (int j = 0; j < n; ++j) {
    Clifford u = (j == 0) ? Clifford::scalar(n, 1.0) : Clifford::generator(n, j);
    Clifford col = g.a() * u * dinv;
    auto coords = col.paravector_coords();
    for (int i = 0; i < n; ++i) f.lin[static_cast<size_t>(i) * n + j] = coords[i];
  }
  f.trans = (g.b() * dinv).paravector_coords();
  return f;
}

double affine_scale(const AffineForm& f) {
  double s = 0.0;
  for (int i = 0; i < f.n; ++i) s += f.lin[static_cast<size_t>(i) * f.n] * f.lin[static_cast<size_t>(i) * f.n];
  return std::sqrt(s);
}

// Solve (L - I) y = -t by Gaussian elimination with partial pivoting;
// reports whether a solution exists within tolerance.
bool solve_fixed_point(const AffineForm& f, std::vector<double>& y, double tol) {
  int n = f.n;
  std::vector<double> m(static_cast<size_t>(n) * (n + 1), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      m[static_cast<size_t>(i) * (n + 1) + j] = f.lin[static_cast<size_t>(i) * n + j] - (i == j ? 1.0 : 0.0);
    m[static_cast<size_t>(i) * (n + 1) + n] = -f.trans[i];
  }
  std::vector<int> pivot_cols;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int best = row;
    for (int r = row + 1; r < n; ++r)
      if (std::fabs(m[static_cast<size_t>(r) * (n + 1) + col]) >
          std::fabs(m[static_cast<size_t>(best) * (n + 1) + col]))
        best = r;
    if (std::fabs(m[static_cast<size_t>(best) * (n + 1) + col]) < tol) continue;
    for (int k = 0; k <= n; ++k)
      std::swap(m[static_cast<size_t>(row) * (n + 1) + k], m[static_cast<size_t>(best) * (n + 1) + k]);
    double piv = m[static_cast<size_t>(row) * (n + 1) + col];
    for (int r = 0; r < n; ++r) {
      if (r == row) continue;
      double factor = m[static_cast<size_t>(r) * (n + 1) + col] / piv;
      if (factor == 0.0) continue;
      for (int k = col; k <= n; ++k)
        m[static_cast<size_t>(r) * (n + 1) + k] -= factor * m[static_cast<size_t>(row) * (n + 1) + k];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  // Inconsistent row => no finite fixed point.
  for (int r = row; r < n; ++r)
    if (std::fabs(m[static_cast<size_t>(r) * (n + 1) + n]) > tol) return false;
  y.assign(n, 0.0);
  for (int r = 0; r < row; ++r)
    y[pivot_cols[r]] = m[static_cast<size_t>(r) * (n + 1) + n] / m[static_cast<size_t>(r) * (n + 1) + pivot_cols[r]];
  return true;
}

MoebiusClass classify_affine(const Moebius& g, const ClassifyOptions& opts) {
  int n = g.dim();
  MoebiusClass out;
  AffineForm f = affine_form(g);
  double lambda = affine_scale(f);
  double tnorm = 0.0;
  for (double v : f.trans) tnorm += v * v;
  tnorm = std::sqrt(tnorm);

  if (std::fabs(lambda - 1.0) > 1e-9) {
    // Similarity with scale != 1: fixes infinity and one finite point.
    out.kind = MoebiusKind::Loxodromic;
    std::vector<double> y;
    if (solve_fixed_point(f, y, 1e-9)) out.fixed_points.push_back(Point::finite(n, y));
    out.fixed_points.push_back(Point::infinity(n));
    out.detail = "affine, scale " + std::to_string(lambda);
    return out;
  }
  // Euclidean isometry.
  bool lin_is_id = true;
  for (int i = 0; i < n && lin_is_id; ++i)
    for (int j = 0; j < n; ++j) {
      double want = (i == j) ? 1.0 : 0.0;
      if (std::fabs(f.lin[static_cast<size_t>(i) * n + j] - want) > 1e-9) {
        lin_is_id = false;
        break;
      }
    }
  if (lin_is_id) {
    if (tnorm <= opts.eps_id) {
      out.kind = MoebiusKind::Identity;
      return out;
    }
    out.kind = MoebiusKind::Parabolic;
    out.fixed_points.push_back(Point::infinity(n));
    out.detail = "translation";
    return out;
  }
  std::vector<double> y;
  if (solve_fixed_point(f, y, 1e-9)) {
    out.kind = MoebiusKind::Elliptic;
    out.fixed_points.push_back(Point::finite(n, y));
    out.fixed_points.push_back(Point::infinity(n));
    out.detail = "rotation about a finite point";
  } else {
    out.kind = MoebiusKind::Parabolic;  // screw motion, no finite fixed point
    out.fixed_points.push_back(Point::infinity(n));
    out.detail = "screw translation";
  }
  return out;
}

// Locate the attracting fixed point of g by applying g^(2^k) to a seed and
// polishing with plain iteration.  Returns nullopt when the candidate does
// not validate as (numerically) fixed.
std::optional<Point> power_limit(const Moebius& g, const Point& seed, const ClassifyOptions& opts) {
  // A seed that is already fixed may sit on the repelling fixed point and
  // would not flow to the attracting one.
  if (chordal_distance(g.apply(seed), seed) <= opts.fixed_point_tol) return std::nullopt;
  // Cap the squared norm so the pseudo-determinant of the power stays
  // accurate; beyond ~1e7 the renormalization inside compose() feeds on a
  // cancelled determinant and corrupts the matrix.
  Moebius p = g;
  int doublings = 0;
  while (doublings < 48 && p.frobenius_norm() < 1e7) {
    p = p.compose(p);
    ++doublings;
  }
  Point x = p.apply(seed);
  Point y = p.apply(x);
  // A parabolic orbit approaches its fixed point like c/N; Richardson
  // extrapolation removes that term.  Validated, so loxodromic input (where
  // y is already converged) cannot be hurt.
  if (!x.at_infinity && !y.at_infinity) {
    Point cand = Point::finite(y.v * 2.0 - x.v);
    if (chordal_distance(g.apply(cand), cand) < chordal_distance(g.apply(y), y)) y = cand;
  }
  x = y;
  // Polish; also covers slowly contracting directions.
  for (int i = 0; i < 64; ++i) {
    Point nx = g.apply(x);
    if (chordal_distance(nx, x) < opts.contraction_tol) {
      x = nx;
      break;
    }
    x = nx;
  }
  if (chordal_distance(g.apply(x), x) <= opts.fixed_point_tol) return x;
  return std::nullopt;
}

bool orbit_bounded(const Moebius& g, const ClassifyOptions& opts) {
  int n1 = g.dim() + 1;
  Clifford base(n1);
  base.set_coeff(1u << (n1 - 2), 1.0);  // the point at height 1 over the origin
  Clifford q = base;
  int steps = std::min(opts.iteration_budget, 4000);
  for (int i = 0; i < steps; ++i) {
    q = g.apply_upper(q);
    if (height_of(q) <= 0.0) return false;
    if (hyperbolic_distance(base, q) > opts.bounded_orbit_radius) return false;
  }
  return true;
}

}  // namespace

MoebiusClass classify(const Moebius& g, const ClassifyOptions& opts) {
  MoebiusClass out;
  if (g.is_identity(opts.eps_id)) {
    out.kind = MoebiusKind::Identity;
    return out;
  }
  if (g.fixes_infinity()) return classify_affine(g, opts);

  // Finite order implies a fixed point inside hyperbolic space.
  Moebius p = g;
  for (int k = 2; k <= opts.max_finite_order; ++k) {
    p = p.compose(g);
    if (p.is_identity(opts.eps_id)) {
      out.kind = MoebiusKind::Elliptic;
      out.detail = "order " + std::to_string(k);
      return out;
    }
  }

  int n = g.dim();
  std::vector<Point> seeds;
  seeds.push_back(Point::infinity(n));
  std::vector<double> s1(n, 0.0);
  seeds.push_back(Point::finite(n, s1));
  s1[0] = 1.0;
  if (n > 1) s1[1] = -0.5;
  seeds.push_back(Point::finite(n, s1));

  Moebius gi = g.inverse();
  std::optional<Point> plus, minus;
  for (const Point& s : seeds) {
    if (!plus) plus = power_limit(g, s, opts);
    if (!minus) minus = power_limit(gi, s, opts);
  }
  if (plus && minus) {
    if (chordal_distance(*plus, *minus) > opts.separation_tol) {
      out.kind = MoebiusKind::Loxodromic;
      out.fixed_points = {*plus, *minus};
      return out;
    }
    out.kind = MoebiusKind::Parabolic;
    out.fixed_points = {*plus};
    return out;
  }
  if (orbit_bounded(g, opts)) {
    out.kind = MoebiusKind::Elliptic;
    out.detail = "bounded orbit";
    return out;
  }
  out.kind = MoebiusKind::Unresolved;
  out.detail = "iteration budget exhausted";
  return out;
}

}  // namespace vahlen
