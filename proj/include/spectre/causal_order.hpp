#pragma once
// Finite partially ordered spaces, cones of isotone functions, order
// reconstruction from function cones, and lattice-closure diagnostics.
//
// Commutative (pointwise, diagonal) model: functions on n points are real
// n-vectors.  The noncommutative meet/join via the matrix absolute value is
// exposed as an experimental operation with no isotone-semantics claim.

#include "spectre/core.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace spectre {

struct FinitePoset {
  int n = 0;
  std::vector<std::vector<bool>> leq;  // leq[x][y] means x <= y
};

inline void check_poset(const FinitePoset& p) {
  if (p.n <= 0 || int(p.leq.size()) != p.n)
    throw DomainError("check_poset: relation size mismatch");
  for (const auto& row : p.leq)
    if (int(row.size()) != p.n)
      throw DomainError("check_poset: relation size mismatch");
  for (int x = 0; x < p.n; ++x)
    if (!p.leq[x][x]) throw DomainError("check_poset: not reflexive");
  for (int x = 0; x < p.n; ++x)
    for (int y = 0; y < p.n; ++y) {
      if (x != y && p.leq[x][y] && p.leq[y][x])
        throw DomainError("check_poset: not antisymmetric");
      if (p.leq[x][y])
        for (int z = 0; z < p.n; ++z)
          if (p.leq[y][z] && !p.leq[x][z])
            throw DomainError("check_poset: not transitive");
    }
}

struct FunctionCone {
  std::vector<RVector> generators;
  bool includes_constants = true;
};

inline constexpr double kOrderTieTol = 1e-12;

// x <= y iff every generator satisfies f(x) <= f(y).  The intersection of
// total preorders is a preorder; antisymmetry is what the generators must
// supply, and its failure means they do not separate the points.
inline FinitePoset order_from_cone(int n, const FunctionCone& cone) {
  if (cone.generators.empty())
    throw DomainError("order_from_cone: need at least one generator");
  for (const auto& f : cone.generators) {
    if (f.size() != n)
      throw DomainError("order_from_cone: generator length mismatch");
    if (!f.allFinite())
      throw DomainError("order_from_cone: generator has non-finite entries");
  }
  FinitePoset p;
  p.n = n;
  p.leq.assign(size_t(n), std::vector<bool>(size_t(n), true));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (const auto& f : cone.generators)
        if (f[x] > f[y] + kOrderTieTol) {
          p.leq[size_t(x)][size_t(y)] = false;
          break;
        }
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (p.leq[size_t(x)][size_t(y)] && p.leq[size_t(y)][size_t(x)])
        throw NotSeparating(
            "order_from_cone: two points agree on every generator");
  check_poset(p);  // transitivity can only break via tie-tolerance accidents
  return p;
}

struct IsotoneReport {
  bool isotone = true;
  int bad_from = -1;  // first related pair with f decreasing along it
  int bad_to = -1;
};

inline IsotoneReport isotone_check(const FinitePoset& p, const RVector& f) {
  check_poset(p);
  if (f.size() != p.n)
    throw DomainError("isotone_check: function length mismatch");
  for (int x = 0; x < p.n; ++x)
    for (int y = 0; y < p.n; ++y)
      if (p.leq[size_t(x)][size_t(y)] && f[x] > f[y] + kOrderTieTol)
        return {false, x, y};
  return {true, -1, -1};
}

namespace detail {

// Normalize modulo the cone's trivial directions (constants and positive
// scale): subtract the minimum, rescale the maximum to 1.  Isotonicity is
// invariant under both, and the quotient keeps the closure finite.
inline RVector cone_normalize(const RVector& f) {
  RVector g = f.array() - f.minCoeff();
  double m = g.maxCoeff();
  if (m > 1e-12) g /= m;
  else g.setZero();
  return g;
}

inline bool contains_vector(const std::vector<RVector>& set, const RVector& v,
                            double tol = 1e-10) {
  for (const auto& w : set)
    if ((w - v).lpNorm<Eigen::Infinity>() <= tol) return true;
  return false;
}

}  // namespace detail

struct ClosureReport {
  int generated = 0;         // distinct functions after closure (normalized)
  int new_functions = 0;     // beyond the normalized generators and constants
  bool constants_present = false;
  bool all_isotone = true;
  int violating_function = -1;  // index into the closure list
  IsotoneReport violation;      // first offending related pair
  bool truncated = false;       // closure capped (report still sound on the
                                // elements generated so far)
};

// Close the generators under +, nonneg rational scaling (p/q with
// p, q <= depth), pointwise meet and join, for `depth` rounds (all modulo
// normalization), and check that everything generated stays isotone.  By
// default the order checked against is the one the generators themselves
// induce -- for which sums, scalings, meets and joins of isotone functions
// are isotone, so violations can only arise against an explicitly supplied
// coarser or incompatible order.
inline ClosureReport cone_closure_check(
    int n, const FunctionCone& cone, int depth,
    const std::optional<FinitePoset>& against = {},
    size_t max_size = 512) {
  if (depth < 1) throw OutOfRange("cone_closure_check: depth >= 1 required");
  FinitePoset order = against ? *against : order_from_cone(n, cone);
  check_poset(order);

  std::vector<double> scales;
  for (int p = 1; p <= depth; ++p)
    for (int q = 1; q <= depth; ++q) scales.push_back(double(p) / q);

  std::vector<RVector> closure;
  for (const auto& f : cone.generators) {
    RVector g = detail::cone_normalize(f);
    if (!detail::contains_vector(closure, g)) closure.push_back(g);
  }
  const size_t original = closure.size();
  ClosureReport rep;
  for (int round = 0; round < depth && !rep.truncated; ++round) {
    std::vector<RVector> next = closure;
    auto push = [&](const RVector& f) {
      if (next.size() >= max_size) {
        rep.truncated = true;
        return;
      }
      RVector g = detail::cone_normalize(f);
      if (!detail::contains_vector(next, g)) next.push_back(g);
    };
    for (size_t i = 0; i < closure.size() && !rep.truncated; ++i)
      for (size_t j = i; j < closure.size() && !rep.truncated; ++j)
        for (double lam : scales) {
          push(closure[i] + lam * closure[j]);
          push(closure[i].cwiseMin(RVector(lam * closure[j])));
          push(closure[i].cwiseMax(RVector(lam * closure[j])));
          if (rep.truncated) break;
        }
    closure = std::move(next);
  }

  rep.generated = int(closure.size());
  rep.new_functions = int(closure.size() - original);
  rep.constants_present = cone.includes_constants;
  for (const auto& f : closure)
    if (f.lpNorm<Eigen::Infinity>() <= 1e-12) rep.constants_present = true;
  for (size_t i = 0; i < closure.size(); ++i) {
    IsotoneReport ir = isotone_check(order, closure[i]);
    if (!ir.isotone) {
      rep.all_isotone = false;
      rep.violating_function = int(i);
      rep.violation = ir;
      break;
    }
  }
  return rep;
}

// Does the cone reconstruct the poset exactly (both inclusions)?
inline bool completely_separated_check(const FinitePoset& p,
                                       const FunctionCone& cone) {
  check_poset(p);
  FinitePoset q = order_from_cone(p.n, cone);
  for (int x = 0; x < p.n; ++x)
    for (int y = 0; y < p.n; ++y)
      if (p.leq[size_t(x)][size_t(y)] != q.leq[size_t(x)][size_t(y)])
        return false;
  return true;
}

// Experimental noncommutative meet/join via the matrix absolute value:
// a ^ b = (a+b)/2 - |a-b|/2.  On commuting (diagonal) inputs this is the
// pointwise meet; no isotone semantics is claimed beyond that case.
inline Operator matrix_meet(const Operator& a, const Operator& b) {
  Operator diff = a - b;
  Operator abs_diff = matrix_function(0.5 * (diff + diff.adjoint().eval()),
                                      [](double x) { return std::abs(x); });
  return 0.5 * (a + b) - 0.5 * abs_diff;
}

inline Operator matrix_join(const Operator& a, const Operator& b) {
  Operator diff = a - b;
  Operator abs_diff = matrix_function(0.5 * (diff + diff.adjoint().eval()),
                                      [](double x) { return std::abs(x); });
  return 0.5 * (a + b) + 0.5 * abs_diff;
}

}  // namespace spectre
