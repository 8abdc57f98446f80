#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vahlen {

// Real Clifford algebra on generators e1..e_{n-1} with e_i^2 = -1 and
// e_i e_j = -e_j e_i.  The parameter n is the dimension of the Moebius
// space R^n; points of R^n are the paravectors x0 + x1 e1 + ... + x_{n-1} e_{n-1}.
//
// Blades are indexed by bitmask: bit i set <=> generator e_{i+1} present,
// so mask 0 is the scalar blade and mask 0b11 is e1e2.  Coefficients are
// stored densely (2^(n-1) doubles); equality is coefficient-wise.

// Sign of blade(a) * blade(b); the result blade is a ^ b.
int blade_sign(unsigned a, unsigned b);

int blade_grade(unsigned mask);

// Render a blade mask as "1", "e1", "e1e2", ...
std::string blade_name(unsigned mask);

// Parse "1" / "e1" / "e1e2"; throws std::invalid_argument on bad syntax.
unsigned parse_blade(const std::string& name, int dim);

class Clifford {
public:
  Clifford() : dim_(2), coeffs_(2, 0.0) {}
  explicit Clifford(int dim);

  static Clifford scalar(int dim, double value);
  static Clifford generator(int dim, int i);  // e_i, 1 <= i <= dim-1
  static Clifford basis_blade(int dim, unsigned mask, double value = 1.0);
  // Paravector x0 + x1 e1 + ... + x_{dim-1} e_{dim-1} from coords (x0..x_{dim-1}).
  static Clifford paravector(int dim, std::span<const double> coords);

  int dim() const { return dim_; }
  int blade_count() const { return static_cast<int>(coeffs_.size()); }

  double coeff(unsigned mask) const { return coeffs_[mask]; }
  void set_coeff(unsigned mask, double v) { coeffs_[mask] = v; }

  Clifford operator+(const Clifford& o) const;
  Clifford operator-(const Clifford& o) const;
  Clifford operator-() const;
  Clifford operator*(double s) const;
  Clifford operator*(const Clifford& o) const;  // geometric product
  Clifford& operator+=(const Clifford& o);
  Clifford& operator*=(double s);

  Clifford main_involution() const;  // grade k scaled by (-1)^k
  Clifford reversion() const;        // grade k scaled by (-1)^(k(k-1)/2)
  Clifford conjugation() const;      // grade k scaled by (-1)^(k(k+1)/2)

  double norm() const;    // Euclidean norm of the coefficient vector
  double norm_sq() const;

  bool is_zero(double tol = 1e-12) const;
  bool is_real(double tol = 1e-12) const;     // scalar blade only
  bool is_paravector(double tol = 1e-12) const;  // grades 0 and 1 only

  double scalar_part() const { return coeffs_[0]; }
  // Coordinates (x0..x_{dim-1}) of the grade <= 1 part.
  std::vector<double> paravector_coords() const;

  // conj(a) / (a conj(a)); requires a conj(a) real and nonzero.
  // Throws std::domain_error otherwise.
  Clifford inverse(double tol = 1e-9) const;

  // a != 0, a conj(a) real positive, and a u main(a)^-1 a paravector for
  // every basis paravector u.  Sufficient test for membership in the
  // Clifford group Gamma_n.
  bool is_clifford_group(double tol = 1e-9) const;

  // Same coefficients inside the algebra of a larger ambient dimension.
  Clifford embedded(int new_dim) const;
  // Drop blades that touch generators >= new_dim (caller checks the residual).
  Clifford restricted(int new_dim) const;

  std::string to_string() const;

private:
  int dim_;
  std::vector<double> coeffs_;
};

Clifford operator*(double s, const Clifford& a);

bool approx_equal(const Clifford& a, const Clifford& b, double tol = 1e-9);

// norm, is-paravector and Clifford-group flags in one call.
struct GradeInfo {
  double norm = 0.0;
  bool is_vector = false;
  bool is_clifford_group = false;
};
GradeInfo norm_and_grade(const Clifford& a, double tol = 1e-9);

}  // namespace vahlen
