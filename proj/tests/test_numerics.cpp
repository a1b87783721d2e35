#include "spectre/cone.hpp"
#include "spectre/core.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace spectre;

namespace {

Operator random_matrix(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Operator a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cdouble(g(rng), g(rng));
  return a;
}

Operator random_hermitian(int n, std::mt19937& rng) {
  Operator a = random_matrix(n, rng);
  return Operator(0.5 * (a + a.adjoint().eval()));
}

// Characteristic polynomial coefficients by the Faddeev-LeVerrier recursion
// (trace-based, no eigensolver involved).
std::vector<cdouble> char_poly(const Operator& a) {
  const int n = int(a.rows());
  std::vector<cdouble> c(size_t(n) + 1);
  c[0] = 1.0;
  Operator m = Operator::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[size_t(k) - 1] * identity(n);
    c[size_t(k)] = -(a * m).trace() / double(k);
  }
  return c;  // p(x) = sum_k c[k] x^{n-k}
}

}  // namespace

TEST_CASE("hermitian_eig on diagonal input") {
  Operator a = Operator::Zero(3, 3);
  a(0, 0) = 3; a(1, 1) = 1; a(2, 2) = 2;
  auto ed = hermitian_eig(a);
  REQUIRE(ed.values.size() == 3);
  CHECK(ed.values[0] == Catch::Approx(1.0));
  CHECK(ed.values[1] == Catch::Approx(2.0));
  CHECK(ed.values[2] == Catch::Approx(3.0));
}

TEST_CASE("hermitian_eig on the real swap matrix") {
  Operator a(2, 2);
  a << 0, 1, 1, 0;
  auto ed = hermitian_eig(a);
  CHECK(ed.values[0] == Catch::Approx(-1.0));
  CHECK(ed.values[1] == Catch::Approx(1.0));
}

TEST_CASE("hermitian_eig matches a companion-matrix root solve") {
  std::mt19937 rng(20240811);
  Operator a = random_hermitian(8, rng);
  auto ed = hermitian_eig(a);

  // Reconstruction and unitarity invariants.
  Operator rec = ed.vectors * ed.values.asDiagonal() * ed.vectors.adjoint();
  CHECK((rec - a).norm() <= 1e-10 * std::max(1.0, a.norm()));
  CHECK((ed.vectors.adjoint() * ed.vectors - identity(8)).norm() <= 1e-10);

  // Independent oracle: characteristic polynomial via Faddeev-LeVerrier,
  // then roots as eigenvalues of the companion matrix (non-symmetric QR path).
  auto c = char_poly(a);
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(8, 8);
  for (int i = 1; i < 8; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < 8; ++i) comp(i, 7) = -c[size_t(8 - i)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(comp);
  std::vector<double> roots;
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(ces.eigenvalues()[i].imag()) < 1e-7);
    roots.push_back(ces.eigenvalues()[i].real());
  }
  std::sort(roots.begin(), roots.end());
  for (int i = 0; i < 8; ++i)
    CHECK(std::abs(roots[size_t(i)] - ed.values[i]) < 1e-8);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  Operator a(2, 2);
  a << 0, cdouble(0, 1), 0, 0;
  CHECK_THROWS_AS(hermitian_eig(a), NonHermitianInput);
}

TEST_CASE("hermitian_eig is permutation-stable across reruns") {
  std::mt19937 rng(7);
  Operator a = random_hermitian(12, rng);
  auto e1 = hermitian_eig(a);
  auto e2 = hermitian_eig(a);
  REQUIRE(e1.values.size() == e2.values.size());
  for (Eigen::Index i = 0; i < e1.values.size(); ++i)
    CHECK(e1.values[i] == e2.values[i]);
}

TEST_CASE("operator_norm basics") {
  CHECK(operator_norm(Operator::Zero(4, 4)) == 0.0);
  Operator d = Operator::Zero(2, 2);
  d(0, 0) = 2; d(1, 1) = -5;
  CHECK(operator_norm(d) == Catch::Approx(5.0));
}

TEST_CASE("operator_norm dominates random unit vectors") {
  std::mt19937 rng(123);
  Operator a = random_matrix(6, rng);
  double nrm = operator_norm(a);
  std::normal_distribution<double> g;
  double best = 0.0;
  CVector argbest = CVector::Zero(6);
  for (int k = 0; k < 10000; ++k) {
    CVector v(6);
    for (int i = 0; i < 6; ++i) v[i] = cdouble(g(rng), g(rng));
    v.normalize();
    double val = (a * v).norm();
    if (val > best) { best = val; argbest = v; }
  }
  CHECK(best <= nrm + 1e-12);
  // Refine the best sample by normalized A*A iterations (independent of the
  // eigensolver route used inside operator_norm) to tighten the lower bound.
  CVector v = argbest;
  for (int k = 0; k < 500; ++k) {
    v = a.adjoint() * (a * v);
    v.normalize();
  }
  double refined = (a * v).norm();
  CHECK(refined <= nrm + 1e-12);
  CHECK(nrm - refined < 1e-3 * nrm);
}

TEST_CASE("operator_norm is submultiplicative and satisfies the C*-identity") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Operator a = random_matrix(5, rng), b = random_matrix(5, rng);
    CHECK(operator_norm(Operator(a * b)) <=
          operator_norm(a) * operator_norm(b) + 1e-9);
    double n1 = operator_norm(Operator(a.adjoint() * a));
    double n2 = operator_norm(a);
    CHECK(std::abs(n1 - n2 * n2) <= 1e-8 * std::max(1.0, n1));
  }
}

TEST_CASE("operator_norm large-dimension path agrees with the dense path") {
  std::mt19937 rng(4242);
  // 600 > the dense cutoff; compare against the Gram-eigenvalue answer.
  Operator a = Operator::Zero(600, 600);
  for (int i = 0; i < 600; ++i) {
    a(i, i) = cdouble(std::sin(0.1 * i), 0.0);
    if (i + 1 < 600) a(i, i + 1) = cdouble(0.3, 0.1);
  }
  double fast = operator_norm(a);
  Eigen::SelfAdjointEigenSolver<Operator> es(Operator(a.adjoint() * a),
                                             Eigen::EigenvaluesOnly);
  double exact = std::sqrt(es.eigenvalues().maxCoeff());
  CHECK(fast == Catch::Approx(exact).epsilon(1e-9));
}

TEST_CASE("matrix_function basics") {
  std::mt19937 rng(5);
  Operator a = random_hermitian(5, rng);
  Operator id = matrix_function(a, [](double x) { return x; });
  CHECK((id - a).norm() <= 1e-10 * a.norm());

  Operator d = Operator::Zero(2, 2);
  d(0, 0) = 1; d(1, 1) = 2;
  Operator sq = matrix_function(d, [](double x) { return x * x; });
  CHECK(sq(0, 0).real() == Catch::Approx(1.0));
  CHECK(sq(1, 1).real() == Catch::Approx(4.0));

  Operator e = Operator::Zero(2, 2);
  e(1, 1) = 1;
  Operator f = matrix_function(e, [](double x) { return std::sqrt(1 + x * x); });
  CHECK(std::abs(f(0, 0) - cdouble(1, 0)) < 1e-12);
  CHECK(std::abs(f(1, 1) - cdouble(std::sqrt(2.0), 0)) < 1e-12);
}

TEST_CASE("matrix_function reports domain errors") {
  Operator d = Operator::Zero(2, 2);
  d(0, 0) = -1; d(1, 1) = 4;
  CHECK_THROWS_AS(matrix_function(d, [](double x) { return std::sqrt(x); }),
                  DomainError);
}

TEST_CASE("cone program: scalar lower bound") {
  ConeProgram p;
  p.n = 1;
  p.objective = RVector::Constant(1, 1.0);
  SocConstraint c;
  c.A.resize(0, 1);
  c.b.resize(0);
  c.d.resize(1);
  c.d.insert(0) = 1.0;
  c.e = -1.0;  // || () || <= x - 1
  p.constraints.push_back(c);
  auto sol = solve_cone_program(p, 1e-8);
  CHECK(sol.objective == Catch::Approx(1.0).margin(1e-5));
}

TEST_CASE("cone program: disk-constrained linear objective") {
  // minimize x+y subject to ||(x-1, y-1)|| <= 1; optimum 2 - sqrt(2).
  ConeProgram p;
  p.n = 2;
  p.objective = RVector::Constant(2, 1.0);
  SocConstraint c;
  c.A.resize(2, 2);
  c.A.insert(0, 0) = 1.0;
  c.A.insert(1, 1) = 1.0;
  c.b = RVector::Constant(2, -1.0);
  c.d.resize(2);
  c.e = 1.0;
  p.constraints.push_back(c);
  auto sol = solve_cone_program(p, 1e-8);
  CHECK(sol.objective == Catch::Approx(2.0 - std::sqrt(2.0)).margin(1e-5));
  CHECK(sol.x[0] == Catch::Approx(1.0 - std::sqrt(0.5)).margin(1e-4));
}

TEST_CASE("cone program: 3-node chain toy matches grid search") {
  // Nodes f0=0, f1, f2 on a time chain with dt = 0.5 and unit lapse:
  // (f1-f0)/dt >= 1, (f2-f1)/dt >= 1, minimize f2.
  const double dt = 0.5;
  ConeProgram p;
  p.n = 2;
  p.objective = RVector::Zero(2);
  p.objective[1] = 1.0;
  auto bound = [&](int hi, int lo) {
    SocConstraint c;
    c.A.resize(0, 2);
    c.b.resize(0);
    c.d.resize(2);
    if (hi >= 0) c.d.insert(hi) = 1.0 / dt;
    if (lo >= 0) c.d.insert(lo) = -1.0 / dt;
    c.e = -1.0;
    return c;
  };
  p.constraints.push_back(bound(0, -1));
  p.constraints.push_back(bound(1, 0));
  auto sol = solve_cone_program(p, 1e-8);

  double best = 1e9;
  for (double f1 = 0.0; f1 <= 3.0; f1 += 1e-3)
    for (double f2 = f1; f2 <= 3.0; f2 += 1e-3) {
      if (f1 / dt >= 1.0 - 1e-12 && (f2 - f1) / dt >= 1.0 - 1e-12)
        best = std::min(best, f2);
    }
  CHECK(sol.objective == Catch::Approx(best).margin(5e-3));
  CHECK(sol.objective == Catch::Approx(1.0).margin(1e-5));
}

TEST_CASE("cone program is deterministic") {
  ConeProgram p;
  p.n = 2;
  p.objective = RVector::Constant(2, 1.0);
  SocConstraint c;
  c.A.resize(2, 2);
  c.A.insert(0, 0) = 1.0;
  c.A.insert(1, 1) = 1.0;
  c.b = RVector::Constant(2, -1.0);
  c.d.resize(2);
  c.e = 1.0;
  p.constraints.push_back(c);
  auto s1 = solve_cone_program(p, 1e-9, 5000);
  auto s2 = solve_cone_program(p, 1e-9, 5000);
  CHECK(s1.objective == s2.objective);
  CHECK((s1.x - s2.x).norm() == 0.0);
  CHECK(s1.iterations == s2.iterations);
}
