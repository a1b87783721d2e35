#pragma once
// Dense complex linear algebra substrate shared by every other header.
//
// Conventions fixed repo-wide:
//   * operators are dense complex square matrices, row-major storage
//   * hermitian_eig returns eigenvalues in ascending order
//   * operator_norm is the largest singular value

#include <Eigen/Dense>

#include <complex>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

namespace spectre {

using cdouble = std::complex<double>;
using Operator =
    Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SPECTRE_DEFINE_ERROR(NAME)                                   \
  struct NAME : Error {                                              \
    explicit NAME(const std::string& what = #NAME) : Error(what) {}  \
  }

SPECTRE_DEFINE_ERROR(NonHermitianInput);
SPECTRE_DEFINE_ERROR(DomainError);
SPECTRE_DEFINE_ERROR(Infeasible);
SPECTRE_DEFINE_ERROR(MaxIterExceeded);
SPECTRE_DEFINE_ERROR(NotCommutative);
SPECTRE_DEFINE_ERROR(NotInAlgebra);
SPECTRE_DEFINE_ERROR(NotPositive);
SPECTRE_DEFINE_ERROR(NotHermitian);
SPECTRE_DEFINE_ERROR(NoRealStructure);
SPECTRE_DEFINE_ERROR(MissingGrading);
SPECTRE_DEFINE_ERROR(InvalidSymmetry);
SPECTRE_DEFINE_ERROR(NotTimelike);
SPECTRE_DEFINE_ERROR(NotSeparating);
SPECTRE_DEFINE_ERROR(LatticeTooSmall);
SPECTRE_DEFINE_ERROR(OutOfRange);
SPECTRE_DEFINE_ERROR(TooShort);
SPECTRE_DEFINE_ERROR(SolverFailure);

#undef SPECTRE_DEFINE_ERROR

// Internal parallelism cap; SPECTRE_THREADS overrides hardware concurrency.
inline int thread_budget() {
  if (const char* env = std::getenv("SPECTRE_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

inline Operator adjoint(const Operator& a) { return a.adjoint(); }

inline Operator identity(Eigen::Index n) { return Operator::Identity(n, n); }

inline bool all_finite(const Operator& a) { return a.allFinite(); }

struct EigenDecomposition {
  RVector values;   // ascending
  Operator vectors; // columns are orthonormal eigenvectors
};

// Eigendecomposition of a Hermitian matrix.  Precondition (relative
// Hermiticity within 1e-12) is enforced; the decomposition itself is done on
// the Hermitian average to suppress roundoff.
inline EigenDecomposition hermitian_eig(const Operator& a) {
  if (!all_finite(a)) throw NonHermitianInput("non-finite entries");
  const double scale = a.norm();
  const double dev = (a - a.adjoint().eval()).norm();
  if (dev > 1e-12 * (scale > 0 ? scale : 1.0))
    throw NonHermitianInput("hermitian_eig: input is not Hermitian");
  Operator h = 0.5 * (a + a.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  if (es.info() != Eigen::Success)
    throw SolverFailure("hermitian_eig: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// Largest singular value.  Exact Hermitian eigensolve of A*A up to dim 512,
// deterministic power iteration above that.
inline double operator_norm(const Operator& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return 0.0;
  if (a.isZero(0.0)) return 0.0;
  Operator gram = a.adjoint() * a;
  if (n <= 512) {
    Eigen::SelfAdjointEigenSolver<Operator> es(gram,
                                               Eigen::EigenvaluesOnly);
    double lam = es.eigenvalues().maxCoeff();
    return lam > 0 ? std::sqrt(lam) : 0.0;
  }
  // Deterministic start: graded entries avoid orthogonality accidents.
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = cdouble(1.0 + 0.5 * std::cos(0.7 * double(i)),
                   0.25 * std::sin(1.3 * double(i)));
  v.normalize();
  double lam = 0.0;
  for (int it = 0; it < 500; ++it) {
    CVector w = gram * v;
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    double lam_new = std::real(cdouble(w.dot(gram * w)));
    if (it > 4 && std::abs(lam_new - lam) <= 1e-13 * std::max(1.0, lam_new)) {
      lam = lam_new;
      break;
    }
    lam = lam_new;
    v = w;
  }
  return lam > 0 ? std::sqrt(lam) : 0.0;
}

// V phi(Lambda) V* for Hermitian input.
inline Operator matrix_function(const Operator& a,
                                const std::function<double(double)>& phi) {
  EigenDecomposition ed = hermitian_eig(a);
  RVector fl(ed.values.size());
  for (Eigen::Index i = 0; i < ed.values.size(); ++i) {
    double y = phi(ed.values[i]);
    if (!std::isfinite(y))
      throw DomainError("matrix_function: phi undefined at eigenvalue " +
                        std::to_string(ed.values[i]));
    fl[i] = y;
  }
  return ed.vectors * fl.asDiagonal() * ed.vectors.adjoint();
}

// Kronecker product, row-major blocks (A ⊗ B)[(i*p+k),(j*q+l)] = A_ij B_kl.
inline Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Operator commutator(const Operator& a, const Operator& b) {
  return a * b - b * a;
}

inline Operator anticommutator(const Operator& a, const Operator& b) {
  return a * b + b * a;
}

}  // namespace spectre
