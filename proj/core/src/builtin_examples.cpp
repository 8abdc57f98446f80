#include "vahlen/builtin_examples.hpp"

#include <stdexcept>

namespace vahlen {

std::optional<ExampleId> example_id_from_string(const std::string& s) {
  if (s == "example1") return ExampleId::Example1;
  if (s == "example2") return ExampleId::Example2;
  if (s == "example3") return ExampleId::Example3;
  if (s == "counterexample") return ExampleId::Counterexample;
  return std::nullopt;
}

std::string to_string(ExampleId id) {
  switch (id) {
    case ExampleId::Example1: return "example1";
    case ExampleId::Example2: return "example2";
    case ExampleId::Example3: return "example3";
    default: return "counterexample";
  }
}

namespace {

Clifford zero(int n) { return Clifford(n); }
Clifford one(int n) { return Clifford::scalar(n, 1.0); }
Clifford e(int n, int i) { return Clifford::generator(n, i); }
Clifford e12(int n) { return Clifford::generator(n, 1) * Clifford::generator(n, 2); }

Moebius rotation_j(int n) { return Moebius(e12(n), zero(n), zero(n), e12(n)); }

GroupSpec example1(int n) {
  if (n == 0) n = 4;
  if (n < 4) throw std::invalid_argument("example1 needs n >= 4");
  GroupSpec s;
  s.n = n;
  Moebius j = rotation_j(n);
  Moebius g1(zero(n), e(n, n - 1), e(n, n - 1), zero(n));
  Moebius g2(zero(n), e(n, n - 1) * 2.0, e(n, n - 1) * 0.5, zero(n));
  s.gens1 = {{"g1", g1}, {"j", j}};
  s.gens2 = {{"g2", g2}, {"j", j}};
  s.j.kind = JOracle::Kind::FiniteList;
  s.j.elements = {Moebius::identity(n), j};
  s.sphere.sphere = Sphere::euclidean(Eigen::VectorXd::Zero(n), std::sqrt(2.0));
  s.sphere.b1_negative = false;  // B1 = {|x| >= sqrt(2)}
  return s;
}

GroupSpec example2(int n) {
  if (n == 0) n = 3;
  if (n < 3) throw std::invalid_argument("example2 needs n >= 3");
  GroupSpec s;
  s.n = n;
  Moebius j = rotation_j(n);
  Moebius g1(one(n), zero(n), Clifford::scalar(n, 2.0), one(n));
  Moebius g2(one(n), Clifford::scalar(n, 5.0), zero(n), one(n));
  s.gens1 = {{"g1", g1}, {"j", j}};
  s.gens2 = {{"g2", g2}, {"j", j}};
  s.j.kind = JOracle::Kind::FiniteList;
  s.j.elements = {Moebius::identity(n), j};
  s.sphere.sphere = Sphere::euclidean(Eigen::VectorXd::Zero(n), 2.0);
  s.sphere.b1_negative = false;  // B1 = {|x| >= 2}
  return s;
}

GroupSpec example3(int n) {
  if (n == 0) n = 5;
  if (n < 5) throw std::invalid_argument("example3 needs n >= 5");
  GroupSpec s;
  s.n = n;
  Moebius j = rotation_j(n);
  Moebius g1(one(n), zero(n), e(n, 3) * 2.0, one(n));
  Moebius g2(one(n), e(n, n - 1) * 5.0, zero(n), one(n));
  s.gens1 = {{"g1", g1}, {"j", j}};
  s.gens2 = {{"g2", g2}, {"j", j}};
  s.j.kind = JOracle::Kind::FiniteList;
  s.j.elements = {Moebius::identity(n), j};
  s.sphere.sphere = Sphere::euclidean(Eigen::VectorXd::Zero(n), 2.0);
  s.sphere.b1_negative = false;
  return s;
}

GroupSpec counterexample(int n) {
  if (n == 0) n = 2;
  if (n != 2) throw std::invalid_argument("the counterexample lives in n = 2");
  GroupSpec s;
  s.n = n;
  // e1 plays the role of the complex unit i.
  Moebius g1(e(n, 1), zero(n), zero(n), -e(n, 1));
  Moebius g2(zero(n), e(n, 1), e(n, 1), zero(n));
  Moebius t(one(n), one(n), zero(n), one(n));
  Moebius w(zero(n), one(n), -one(n), zero(n));
  s.gens1 = {{"g1", g1}, {"t", t}, {"s", w}};
  s.gens2 = {{"g2", g2}, {"t", t}, {"s", w}};
  s.j.kind = JOracle::Kind::IntegerMatrix;
  s.j.elements = {t, w};  // generating set, used by invariance checks
  Eigen::VectorXd normal(2);
  normal << 0.0, 1.0;  // coordinate of e1
  s.sphere.sphere = Sphere::plane(normal, 0.0);
  s.sphere.b1_negative = true;  // B1 = {x_1 <= 0}, the lower half-plane
  return s;
}

}  // namespace

GroupSpec builtin_example(ExampleId id, int n) {
  switch (id) {
    case ExampleId::Example1: return example1(n);
    case ExampleId::Example2: return example2(n);
    case ExampleId::Example3: return example3(n);
    default: return counterexample(n);
  }
}

CheckConfig default_check_config(ExampleId id) {
  CheckConfig cfg;
  if (id == ExampleId::Counterexample) cfg.letter_depth = 1;
  return cfg;
}

}  // namespace vahlen
