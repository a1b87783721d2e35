#pragma once
// Riemannian spectral distance between states of a finite spectral triple:
// maximize (xi - eta)(a) over Hermitian algebra elements with ||[D,a]|| <= 1,
// by projected supergradient ascent with spectral clipping.

#include "spectre/core.hpp"
#include "spectre/gelfand.hpp"
#include "spectre/spectral_triple.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace spectre {

struct DistanceResult {
  double distance = 0.0;
  bool infinite = false;   // states separated by the commutant of D
  Operator witness;        // Hermitian element attaining the supremum
};

namespace detail {

// Real vectorization of a complex matrix (real parts then imaginary parts).
inline Eigen::VectorXd vec_real(const Operator& a) {
  Eigen::Index n2 = a.size();
  Eigen::VectorXd v(2 * n2);
  Eigen::Map<const Eigen::VectorXcd> flat(a.data(), n2);
  v.head(n2) = flat.real();
  v.tail(n2) = flat.imag();
  return v;
}

// Linearly independent Hermitian basis of the (adjoint-closed) algebra span.
inline std::vector<Operator> hermitian_basis(
    const std::vector<Operator>& algebra_basis) {
  std::vector<Operator> cand;
  for (const auto& b : algebra_basis) {
    cand.push_back(0.5 * (b + Operator(b.adjoint())));
    cand.push_back(cdouble(0, -0.5) * (b - Operator(b.adjoint())));
  }
  std::vector<Operator> out;
  Eigen::MatrixXd span(2 * cand.front().size(), 0);
  for (const auto& h : cand) {
    Eigen::VectorXd v = vec_real(h);
    if (v.norm() < 1e-12) continue;
    Eigen::VectorXd resid = v;
    if (span.cols() > 0)
      resid -= span * (span.transpose() * v);  // span kept orthonormal
    if (resid.norm() > 1e-10 * v.norm()) {
      span.conservativeResize(Eigen::NoChange, span.cols() + 1);
      span.col(span.cols() - 1) = resid / resid.norm();
      out.push_back(h);
    }
  }
  return out;
}

}  // namespace detail

// Supremum of (xi - eta)(a) over Hermitian a in the algebra with
// operator_norm([D, a]) <= 1.  Directions commuting with D that still move
// the objective make the states infinitely far apart.
inline DistanceResult spectral_distance(const FiniteSpectralTriple& t,
                                        const StateFunctional& xi,
                                        const StateFunctional& eta,
                                        double tol = 1e-6) {
  const Eigen::Index dim = t.dirac.rows();
  DistanceResult res;
  res.witness = Operator::Zero(dim, dim);

  std::vector<Operator> basis = detail::hermitian_basis(t.algebra_basis);
  const int m = int(basis.size());
  if (m == 0) return res;

  Eigen::VectorXd c(m);
  for (int i = 0; i < m; ++i)
    c[i] = std::real(xi(basis[size_t(i)]) - eta(basis[size_t(i)]));
  if (c.norm() < 1e-14) return res;

  // Columns of K: real-vectorized commutators [D, h_i].
  Eigen::MatrixXd k(2 * dim * dim, m);
  for (int i = 0; i < m; ++i)
    k.col(i) = detail::vec_real(commutator(t.dirac, basis[size_t(i)]));

  // Seminorm kernel: coefficient directions with [D, a] = 0.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(k, Eigen::ComputeThinV);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > std::max(1e-12, 1e-12 * smax)) ++rank;
  Eigen::MatrixXd kernel = svd.matrixV().rightCols(m - rank);

  Eigen::VectorXd c_kernel = kernel * (kernel.transpose() * c);
  Eigen::VectorXd c_perp = c - c_kernel;
  if (c_kernel.norm() > 1e-9 * std::max(1.0, c.norm())) {
    res.infinite = true;
    res.distance = std::numeric_limits<double>::infinity();
    Eigen::VectorXd dir = c_kernel / c_kernel.norm();
    res.witness = Operator::Zero(dim, dim);
    for (int i = 0; i < m; ++i) res.witness += dir[i] * basis[size_t(i)];
    return res;
  }
  if (c_perp.norm() < 1e-14) return res;

  auto assemble = [&](const Eigen::VectorXd& x) {
    Operator a = Operator::Zero(dim, dim);
    for (int i = 0; i < m; ++i) a += x[i] * basis[size_t(i)];
    return a;
  };

  std::vector<Operator> coms;
  coms.reserve(size_t(m));
  for (int i = 0; i < m; ++i)
    coms.push_back(commutator(t.dirac, basis[size_t(i)]));

  // Dual form: minimize f(x) = ||[D, a(x)]|| on the hyperplane c.x = 1
  // (x confined to the seminorm row space); distance = 1 / min f.  The
  // supergradient of the supremum problem becomes the subgradient of f,
  // read off the top singular pair of the commutator.
  const double cc = c_perp.squaredNorm();
  Eigen::VectorXd x = c_perp / cc;
  Eigen::VectorXd best_x = x;
  double best_f = std::numeric_limits<double>::infinity();
  int since_improvement = 0;
  const int max_iter = 20000;
  // Top singular pair via power iteration on B*B, warm-started across outer
  // iterations (the iterate moves slowly, so a few inner steps suffice).
  CVector v = CVector::Constant(dim, cdouble(1.0 / std::sqrt(double(dim)), 0));
  // Polyak tail averaging damps subgradient oscillation around degenerate
  // top-singular-value faces.
  Eigen::VectorXd x_sum = Eigen::VectorXd::Zero(m);
  long x_count = 0;
  CVector v_avg = v;
  auto consider = [&](const Eigen::VectorXd& cand, double f) {
    if (f < best_f - tol * std::max(1.0, best_f)) since_improvement = 0;
    if (f < best_f) {
      best_f = f;
      best_x = cand;
    }
  };
  for (int iter = 1; iter <= max_iter && since_improvement < 400; ++iter) {
    Operator b = commutator(t.dirac, assemble(x));
    for (int inner = 0; inner < 80; ++inner) {
      CVector w = b.adjoint() * (b * v);
      double wn = w.norm();
      if (wn < 1e-300) break;
      v = w / wn;
    }
    CVector bv = b * v;
    double f = bv.norm();
    if (f < 1e-300) break;
    CVector u = bv / f;
    ++since_improvement;
    consider(x, f);
    x_sum += x;
    ++x_count;
    if (iter % 50 == 0) {
      Eigen::VectorXd xa = x_sum / double(x_count);
      Operator ba = commutator(t.dirac, assemble(xa));
      for (int inner = 0; inner < 80; ++inner) {
        CVector w = ba.adjoint() * (ba * v_avg);
        double wn = w.norm();
        if (wn < 1e-300) break;
        v_avg = w / wn;
      }
      consider(xa, (ba * v_avg).norm());
      // Restart the average window so stale early iterates wash out.
      if (x_count > 2000) {
        x_sum = xa * 1000.0;
        x_count = 1000;
      }
    }
    // Subgradient of the top singular value: g_i = Re(u* [D,h_i] v).
    Eigen::VectorXd g(m);
    for (int i = 0; i < m; ++i)
      g[i] = std::real(cdouble(u.dot(coms[size_t(i)] * v)));
    // Stay on the hyperplane and in the row space.
    g -= kernel * (kernel.transpose() * g);
    g -= c_perp * (c_perp.dot(g) / cc);
    double gn = g.norm();
    if (gn < 1e-14) break;
    double step = 0.5 * best_x.norm() / (std::sqrt(double(iter)) * gn);
    x -= step * g;
    x += c_perp * ((1.0 - c_perp.dot(x)) / cc);  // fix drift off c.x = 1
  }
  // The power-iteration estimate can lag slightly; certify with the exact
  // norm so the returned witness is feasible.
  best_f = operator_norm(commutator(t.dirac, assemble(best_x)));
  if (best_f < 1e-14) {
    // Should have been caught by the kernel test; treat as disconnected.
    res.infinite = true;
    res.distance = std::numeric_limits<double>::infinity();
    res.witness = assemble(best_x);
    return res;
  }
  res.distance = 1.0 / best_f;
  res.witness = assemble(Eigen::VectorXd(best_x / best_f));
  return res;
}

// Pairwise distances; symmetric because the constraint ball is symmetric and
// each pair is solved once.
inline Eigen::MatrixXd distance_matrix(const FiniteSpectralTriple& t,
                                       const std::vector<StateFunctional>& states,
                                       double tol = 1e-6) {
  const int n = int(states.size());
  if (n < 2) throw DomainError("distance_matrix: need at least 2 states");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto r = spectral_distance(t, states[size_t(i)], states[size_t(j)], tol);
      d(i, j) = d(j, i) = r.distance;
    }
  return d;
}

}  // namespace spectre
