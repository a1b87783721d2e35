#pragma once
// Reusable finite-geometry fixtures: two-point algebras, mod-8 sign-table
// model triples, and spectrally truncated circle multiplication operators.
// Shared by the test suites, the demos and the CLI.

#include "spectre/core.hpp"
#include "spectre/spectral_triple.hpp"

namespace spectre {

// Clifford convention fixed repo-wide for signature (-,+):
// (g0)^2 = -1, g0 anti-Hermitian; (g1)^2 = +1, g1 Hermitian.
inline Operator gamma0() {
  Operator g(2, 2);
  g << 0, 1, -1, 0;
  return g;
}

inline Operator gamma1() {
  Operator g(2, 2);
  g << 0, 1, 1, 0;
  return g;
}

// Two-point space: A = C ⊕ C acting diagonally on C², D = offdiag(m).
inline FiniteSpectralTriple two_point_triple(cdouble m) {
  FiniteSpectralTriple t;
  t.hilbert_dim = 2;
  Operator e0 = Operator::Zero(2, 2), e1 = Operator::Zero(2, 2);
  e0(0, 0) = 1;
  e1(1, 1) = 1;
  t.algebra_basis = {e0, e1};
  t.dirac = Operator::Zero(2, 2);
  t.dirac(0, 1) = m;
  t.dirac(1, 0) = std::conj(m);
  return t;
}

// Two-point space in bimodule form on C²⊗C²: left action a⊗1, right action
// via J = flip∘conj; satisfies the order-one condition, KO-dimension 0.
inline FiniteSpectralTriple two_point_real_triple(cdouble m) {
  FiniteSpectralTriple t;
  t.hilbert_dim = 4;
  Operator e0 = Operator::Zero(2, 2), e1 = Operator::Zero(2, 2);
  e0(0, 0) = 1;
  e1(1, 1) = 1;
  Operator id2 = identity(2);
  t.algebra_basis = {kron(e0, id2), kron(e1, id2)};
  Operator mm = Operator::Zero(2, 2);
  mm(0, 1) = m;
  mm(1, 0) = std::conj(m);
  t.dirac = kron(mm, id2) + kron(id2, mm.conjugate());
  Operator s3(2, 2);
  s3 << 1, 0, 0, -1;
  t.grading = kron(s3, s3);
  Operator swap = Operator::Zero(4, 4);
  swap(0, 0) = 1; swap(1, 2) = 1; swap(2, 1) = 1; swap(3, 3) = 1;
  t.real_structure = RealStructure{swap, 0};
  return t;
}

// Minimal even real triple of KO-dimension 2 (J² = -1 forces D = 0 here).
inline FiniteSpectralTriple ko2_triple() {
  FiniteSpectralTriple t;
  t.hilbert_dim = 2;
  t.algebra_basis = {identity(2)};
  t.dirac = Operator::Zero(2, 2);
  Operator g(2, 2);
  g << 0, 1, 1, 0;
  t.grading = g;
  Operator c(2, 2);
  c << 0, -1, 1, 0;
  t.real_structure = RealStructure{c, 2};
  return t;
}

// Minimal even real triple of KO-dimension 6 with a mass term.
inline FiniteSpectralTriple ko6_triple(double m = 1.0) {
  FiniteSpectralTriple t;
  t.hilbert_dim = 2;
  t.algebra_basis = {identity(2)};
  Operator s1(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s3 << 1, 0, 0, -1;
  t.dirac = m * s1;
  t.grading = s3;
  t.real_structure = RealStructure{s1, 6};
  return t;
}

// Even real triple of KO-dimension 4 on C⁴ (J² = -1, J D = D J, J γ = γ J).
inline FiniteSpectralTriple ko4_triple(double m = 1.0) {
  FiniteSpectralTriple t;
  t.hilbert_dim = 4;
  t.algebra_basis = {identity(4)};
  Operator j2(2, 2), s1(2, 2), s3(2, 2);
  j2 << 0, -1, 1, 0;
  s1 << 0, 1, 1, 0;
  s3 << 1, 0, 0, -1;
  t.dirac = m * kron(identity(2), s1);
  t.grading = kron(s3, s3);
  t.real_structure = RealStructure{kron(j2, s1), 4};
  return t;
}

// Spectral truncation of the circle: modes k = -N..N, D = diag(k),
// multiplication by e^{ijθ} becomes the shifted band matrix.
inline Operator circle_dirac(int n) {
  Operator d = Operator::Zero(2 * n + 1, 2 * n + 1);
  for (int k = -n; k <= n; ++k) d(k + n, k + n) = double(k);
  return d;
}

inline Operator circle_mode_operator(int n, int j) {
  // Truncated multiplication by e^{i j θ} in the Fourier basis.
  const int dim = 2 * n + 1;
  Operator t = Operator::Zero(dim, dim);
  for (int k = -n; k <= n; ++k) {
    int kp = k + j;
    if (kp >= -n && kp <= n) t(kp + n, k + n) = 1.0;
  }
  return t;
}

// Truncated multiplication operator of a real trigonometric polynomial with
// coefficients c[j] for e^{i j θ}, j = -deg..deg.
inline Operator circle_multiplication(int n, const std::vector<cdouble>& coef,
                                      int deg) {
  const int dim = 2 * n + 1;
  Operator m = Operator::Zero(dim, dim);
  for (int j = -deg; j <= deg; ++j)
    m += coef[size_t(j + deg)] * circle_mode_operator(n, j);
  return m;
}

// Full circle triple with the multiplication algebra up to mode degree `deg`.
inline FiniteSpectralTriple circle_triple(int n, int deg) {
  FiniteSpectralTriple t;
  t.hilbert_dim = 2 * n + 1;
  for (int j = -deg; j <= deg; ++j)
    t.algebra_basis.push_back(circle_mode_operator(n, j));
  t.dirac = circle_dirac(n);
  return t;
}

}  // namespace spectre
