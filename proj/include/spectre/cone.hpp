#pragma once
// Second-order-cone programming by an over-relaxed ADMM splitting.
//
// Problem form:  minimize c'x  subject to  ||A_i x + b_i||_2 <= d_i'x + e_i.
// The solver is first-order and deterministic; the stopping rule is relative
// objective stagnation over a 50-iteration window combined with a feasibility
// check, see solve_cone_program below.

#include "spectre/core.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <vector>

namespace spectre {

struct SocConstraint {
  // ||A x + b|| <= d'x + e.  A may have zero rows (pure scalar constraint).
  Eigen::SparseMatrix<double> A;  // m x n
  RVector b;                      // m
  Eigen::SparseVector<double> d;  // n
  double e = 0.0;
};

struct ConeProgram {
  int n = 0;        // number of real variables
  RVector objective;  // length n
  std::vector<SocConstraint> constraints;
};

enum class SolveStatus { Optimal, MaxIterExceeded };

struct ConeSolution {
  RVector x;
  double objective = 0.0;
  SolveStatus status = SolveStatus::Optimal;
  int iterations = 0;
  double violation = 0.0;
};

namespace detail {

inline void project_soc(double* z, int m) {
  // z = (u[0..m-2], s); project onto ||u|| <= s.
  double s = z[m - 1];
  double t = 0.0;
  for (int i = 0; i + 1 < m; ++i) t += z[i] * z[i];
  t = std::sqrt(t);
  if (t <= s) return;
  if (t <= -s) {
    for (int i = 0; i < m; ++i) z[i] = 0.0;
    return;
  }
  double beta = 0.5 * (s + t);
  double scale = (t > 0) ? beta / t : 0.0;
  for (int i = 0; i + 1 < m; ++i) z[i] *= scale;
  z[m - 1] = beta;
}

}  // namespace detail

inline double cone_violation(const ConeProgram& p, const RVector& x) {
  double v = 0.0;
  for (const auto& c : p.constraints) {
    double lhs = c.A.rows() ? (c.A * x + c.b).norm() : c.b.norm();
    double rhs = c.d.dot(x) + c.e;
    v = std::max(v, lhs - rhs);
  }
  return std::max(v, 0.0);
}

inline ConeSolution solve_cone_program(const ConeProgram& p, double tol = 1e-6,
                                       int max_iter = 20000) {
  const int n = p.n;
  if (n <= 0) throw SolverFailure("solve_cone_program: empty program");

  // Stack all cones into F x + g = z, z in K.
  std::vector<Eigen::Triplet<double>> trip;
  std::vector<int> block_size;
  int rows = 0;
  for (const auto& c : p.constraints) {
    const int m = int(c.A.rows());
    for (int k = 0; k < c.A.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(c.A, k); it; ++it)
        trip.emplace_back(rows + int(it.row()), int(it.col()), it.value());
    for (Eigen::SparseVector<double>::InnerIterator it(c.d); it; ++it)
      trip.emplace_back(rows + m, int(it.index()), it.value());
    block_size.push_back(m + 1);
    rows += m + 1;
  }
  Eigen::SparseMatrix<double> F(rows, n);
  F.setFromTriplets(trip.begin(), trip.end());
  RVector g(rows);
  {
    int r = 0;
    for (const auto& c : p.constraints) {
      const int m = int(c.A.rows());
      if (m) g.segment(r, m) = c.b;
      g[r + m] = c.e;
      r += m + 1;
    }
  }

  const double sigma = 1e-8;
  double rho = 1.0;
  Eigen::SparseMatrix<double> FtF = Eigen::SparseMatrix<double>(F.transpose()) * F;
  Eigen::SparseMatrix<double> eye(n, n);
  eye.setIdentity();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  auto factor = [&]() {
    Eigen::SparseMatrix<double> K = rho * FtF + sigma * eye;
    ldlt.compute(K);
    if (ldlt.info() != Eigen::Success)
      throw SolverFailure("solve_cone_program: factorization failed");
  };
  factor();
  int refactor_budget = 12;

  RVector x = RVector::Zero(n);
  RVector z = g;
  {
    int r = 0;
    for (int bs : block_size) {
      detail::project_soc(z.data() + r, bs);
      r += bs;
    }
  }
  RVector w = RVector::Zero(rows);
  const double alpha = 1.6;

  std::vector<double> obj_hist;
  obj_hist.reserve(size_t(max_iter) + 1);
  ConeSolution sol;
  RVector z_prev = z;

  for (int it = 0; it < max_iter; ++it) {
    RVector rhs = rho * (Eigen::SparseMatrix<double>(F.transpose()) * (z - g - w)) -
                  p.objective + sigma * x;
    x = ldlt.solve(rhs);
    RVector fx = F * x + g;
    z_prev = z;
    RVector v = alpha * fx + (1.0 - alpha) * z + w;
    z = v;
    {
      int r = 0;
      for (int bs : block_size) {
        detail::project_soc(z.data() + r, bs);
        r += bs;
      }
    }
    w = v - z;

    double obj = p.objective.dot(x);
    obj_hist.push_back(obj);
    if (it >= 50 && it % 10 == 0) {
      double prev = obj_hist[size_t(it) - 50];
      bool stagnant = std::abs(obj - prev) <= tol * std::max(1.0, std::abs(obj));
      if (stagnant) {
        double viol = cone_violation(p, x);
        if (viol <= tol) {
          sol.x = x;
          sol.objective = obj;
          sol.status = SolveStatus::Optimal;
          sol.iterations = it + 1;
          sol.violation = viol;
          return sol;
        }
        // Stagnant but infeasible by a wide margin: declare infeasibility.
        if (it > max_iter / 2 && viol > 1000.0 * tol &&
            std::abs(obj - obj_hist[size_t(it) - 50]) <= 1e-12 * std::max(1.0, std::abs(obj)))
          throw Infeasible("solve_cone_program: stalled at violation " +
                           std::to_string(viol));
      }
    }
    if (refactor_budget > 0 && it > 0 && it % 500 == 0) {
      double rp = (fx - z).norm();
      double rd = rho * (Eigen::SparseMatrix<double>(F.transpose()) * (z - z_prev)).norm();
      if (rp > 10.0 * rd) {
        rho *= 5.0; --refactor_budget; factor();
      } else if (rd > 10.0 * rp) {
        rho /= 5.0; --refactor_budget; factor();
      }
    }
  }
  double viol = cone_violation(p, x);
  if (viol > std::max(1e-3, 1000.0 * tol))
    throw Infeasible("solve_cone_program: violation " + std::to_string(viol) +
                     " at iteration budget");
  sol.x = x;
  sol.objective = p.objective.dot(x);
  sol.status = SolveStatus::MaxIterExceeded;
  sol.iterations = max_iter;
  sol.violation = viol;
  return sol;
}

}  // namespace spectre
