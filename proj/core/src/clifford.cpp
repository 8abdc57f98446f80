#include "vahlen/clifford.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vahlen {

int blade_sign(unsigned a, unsigned b) {
  int swaps = 0;
  unsigned t = a >> 1;
  while (t != 0) {
    swaps += std::popcount(t & b);
    t >>= 1;
  }
  // e_i^2 = -1 for every generator shared by both blades
  swaps += std::popcount(a & b);
  return (swaps & 1) ? -1 : 1;
}

int blade_grade(unsigned mask) { return std::popcount(mask); }

std::string blade_name(unsigned mask) {
  if (mask == 0) return "1";
  std::string out;
  for (int i = 0; mask >> i; ++i) {
    if (mask & (1u << i)) {
      out += "e";
      out += std::to_string(i + 1);
    }
  }
  return out;
}

unsigned parse_blade(const std::string& name, int dim) {
  if (name == "1") return 0;
  unsigned mask = 0;
  int last = 0;
  size_t pos = 0;
  while (pos < name.size()) {
    if (name[pos] != 'e') throw std::invalid_argument("bad blade key: " + name);
    ++pos;
    size_t start = pos;
    while (pos < name.size() && std::isdigit(static_cast<unsigned char>(name[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("bad blade key: " + name);
    int idx = std::stoi(name.substr(start, pos - start));
    if (idx <= last || idx > dim - 1)
      throw std::invalid_argument("blade index out of range or unordered: " + name);
    last = idx;
    mask |= 1u << (idx - 1);
  }
  return mask;
}

Clifford::Clifford(int dim) : dim_(dim) {
  if (dim < 2 || dim > 12) throw std::invalid_argument("ambient dimension must be in [2,12]");
  coeffs_.assign(1ull << (dim - 1), 0.0);
}

Clifford Clifford::scalar(int dim, double value) {
  Clifford c(dim);
  c.coeffs_[0] = value;
  return c;
}

Clifford Clifford::generator(int dim, int i) {
  if (i < 1 || i > dim - 1) throw std::invalid_argument("generator index out of range");
  Clifford c(dim);
  c.coeffs_[1u << (i - 1)] = 1.0;
  return c;
}

Clifford Clifford::basis_blade(int dim, unsigned mask, double value) {
  Clifford c(dim);
  if (mask >= c.coeffs_.size()) throw std::invalid_argument("blade mask out of range");
  c.coeffs_[mask] = value;
  return c;
}

Clifford Clifford::paravector(int dim, std::span<const double> coords) {
  if (static_cast<int>(coords.size()) != dim)
    throw std::invalid_argument("paravector needs dim coordinates");
  Clifford c(dim);
  c.coeffs_[0] = coords[0];
  for (int i = 1; i < dim; ++i) c.coeffs_[1u << (i - 1)] = coords[i];
  return c;
}

Clifford Clifford::operator+(const Clifford& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  Clifford r(*this);
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

Clifford Clifford::operator-(const Clifford& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  Clifford r(*this);
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
  return r;
}

Clifford Clifford::operator-() const {
  Clifford r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Clifford Clifford::operator*(double s) const {
  Clifford r(*this);
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

Clifford& Clifford::operator+=(const Clifford& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Clifford& Clifford::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Clifford Clifford::operator*(const Clifford& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  Clifford r(dim_);
  const size_t nb = coeffs_.size();
  for (size_t i = 0; i < nb; ++i) {
    double ci = coeffs_[i];
    if (ci == 0.0) continue;
    for (size_t j = 0; j < nb; ++j) {
      double cj = o.coeffs_[j];
      if (cj == 0.0) continue;
      unsigned a = static_cast<unsigned>(i);
      unsigned b = static_cast<unsigned>(j);
      r.coeffs_[a ^ b] += blade_sign(a, b) * ci * cj;
    }
  }
  return r;
}

Clifford operator*(double s, const Clifford& a) { return a * s; }

namespace {
Clifford grade_scaled(const Clifford& a, int (*sign_of_grade)(int)) {
  Clifford r(a.dim());
  for (int m = 0; m < a.blade_count(); ++m) {
    double c = a.coeff(static_cast<unsigned>(m));
    if (c != 0.0) r.set_coeff(static_cast<unsigned>(m), sign_of_grade(blade_grade(m)) * c);
  }
  return r;
}
}  // namespace

Clifford Clifford::main_involution() const {
  return grade_scaled(*this, [](int k) { return (k & 1) ? -1 : 1; });
}

Clifford Clifford::reversion() const {
  return grade_scaled(*this, [](int k) { return ((k * (k - 1) / 2) & 1) ? -1 : 1; });
}

Clifford Clifford::conjugation() const {
  return grade_scaled(*this, [](int k) { return ((k * (k + 1) / 2) & 1) ? -1 : 1; });
}

double Clifford::norm_sq() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return s;
}

double Clifford::norm() const { return std::sqrt(norm_sq()); }

bool Clifford::is_zero(double tol) const { return norm() <= tol; }

bool Clifford::is_real(double tol) const {
  double s = 0.0;
  for (size_t i = 1; i < coeffs_.size(); ++i) s += coeffs_[i] * coeffs_[i];
  return std::sqrt(s) <= tol * (1.0 + std::fabs(coeffs_[0]));
}

bool Clifford::is_paravector(double tol) const {
  double hi = 0.0;
  for (size_t i = 0; i < coeffs_.size(); ++i)
    if (blade_grade(static_cast<int>(i)) > 1) hi += coeffs_[i] * coeffs_[i];
  return std::sqrt(hi) <= tol * (1.0 + norm());
}

std::vector<double> Clifford::paravector_coords() const {
  std::vector<double> out(dim_, 0.0);
  out[0] = coeffs_[0];
  for (int i = 1; i < dim_; ++i) out[i] = coeffs_[1u << (i - 1)];
  return out;
}

Clifford Clifford::inverse(double tol) const {
  Clifford cj = conjugation();
  Clifford q = (*this) * cj;
  if (!q.is_real(tol))
    throw std::domain_error("not invertible: a conj(a) is not a real scalar");
  double s = q.scalar_part();
  double scale = norm_sq();
  // vanishing relative to |a|^2: catches null directions without rejecting
  // small but perfectly invertible elements
  if (scale == 0.0 || std::fabs(s) <= tol * scale)
    throw std::domain_error("not invertible: a conj(a) vanishes");
  return cj * (1.0 / s);
}

bool Clifford::is_clifford_group(double tol) const {
  if (is_zero(tol)) return false;
  Clifford q = (*this) * conjugation();
  if (!q.is_real(tol)) return false;
  if (q.scalar_part() <= tol * norm_sq()) return false;
  Clifford minv;
  try {
    minv = main_involution().inverse(tol);
  } catch (const std::domain_error&) {
    return false;
  }
  for (int i = 0; i < dim_; ++i) {
    Clifford u = (i == 0) ? scalar(dim_, 1.0) : generator(dim_, i);
    Clifford im = (*this) * u * minv;
    if (!im.is_paravector(tol)) return false;
  }
  return true;
}

Clifford Clifford::embedded(int new_dim) const {
  if (new_dim < dim_) throw std::invalid_argument("embedded() needs new_dim >= dim");
  Clifford r(new_dim);
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i];
  return r;
}

Clifford Clifford::restricted(int new_dim) const {
  if (new_dim > dim_) throw std::invalid_argument("restricted() needs new_dim <= dim");
  Clifford r(new_dim);
  for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i];
  return r;
}

std::string Clifford::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0.0) continue;
    if (!first) os << " + ";
    os << coeffs_[i];
    if (i != 0) os << "*" << blade_name(static_cast<unsigned>(i));
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

bool approx_equal(const Clifford& a, const Clifford& b, double tol) {
  if (a.dim() != b.dim()) return false;
  double scale = 1.0 + std::max(a.norm(), b.norm());
  return (a - b).norm() <= tol * scale;
}

GradeInfo norm_and_grade(const Clifford& a, double tol) {
  GradeInfo g;
  g.norm = a.norm();
  g.is_vector = a.is_paravector(tol);
  g.is_clifford_group = a.is_clifford_group(tol);
  return g;
}

}  // namespace vahlen
