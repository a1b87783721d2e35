#pragma once
// Gel'fand theory and the GNS construction for finite-dimensional algebras:
// characters by simultaneous diagonalization, the Gel'fand transform, states,
// cyclic representations, and the commutant-based irreducibility test.

#include "spectre/core.hpp"

#include <optional>
#include <vector>

namespace spectre {

struct CharacterSet {
  // values(i, j) = chi_i(basis[j]).
  Eigen::MatrixXcd values;
  // Shared simultaneous-diagonalization unitary; column blocks listed in
  // `classes` span the joint eigenspace of each character.
  Operator diagonalizer;
  std::vector<std::vector<int>> classes;

  int count() const { return int(classes.size()); }
};

namespace detail {

inline Eigen::VectorXcd span_coefficients(const std::vector<Operator>& basis,
                                          const Operator& x, double tol,
                                          const char* who) {
  const Eigen::Index n2 = x.size();
  Eigen::MatrixXcd m(n2, Eigen::Index(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    m.col(Eigen::Index(j)) =
        Eigen::Map<const Eigen::VectorXcd>(basis[j].data(), n2);
  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(x.data(), n2);
  Eigen::VectorXcd coef = m.colPivHouseholderQr().solve(v);
  if ((m * coef - v).norm() > tol * std::max(1.0, v.norm()))
    throw NotInAlgebra(std::string(who) + ": element not in the algebra span");
  return coef;
}

}  // namespace detail

// Characters of a commutative (*-closed) matrix algebra span.
inline CharacterSet characters(const std::vector<Operator>& basis) {
  if (basis.empty()) throw NotCommutative("characters: empty basis");
  const Eigen::Index n = basis[0].rows();

  // Refine with the Hermitian and anti-Hermitian parts so the shared
  // diagonalizer is built from self-adjoint pieces only.
  std::vector<Operator> parts;
  for (const auto& a : basis) {
    parts.push_back(Operator(0.5 * (a + a.adjoint().eval())));
    parts.push_back(Operator(cdouble(0, -0.5) * (a - a.adjoint().eval())));
  }
  for (size_t i = 0; i < parts.size(); ++i)
    for (size_t j = i + 1; j < parts.size(); ++j) {
      double scale = std::max(1.0, operator_norm(parts[i]) * operator_norm(parts[j]));
      if (operator_norm(commutator(parts[i], parts[j])) > 1e-10 * scale)
        throw NotCommutative("characters: basis is not commutative");
    }

  // Recursive eigenspace refinement.
  std::vector<Operator> spaces;  // each: n × d column-orthonormal
  spaces.push_back(identity(n));
  for (const auto& h : parts) {
    std::vector<Operator> next;
    for (const auto& q : spaces) {
      Operator compressed = q.adjoint() * h * q;
      EigenDecomposition ed = hermitian_eig(compressed);
      const Eigen::Index d = ed.values.size();
      Eigen::Index start = 0;
      for (Eigen::Index i = 1; i <= d; ++i) {
        if (i == d || ed.values[i] - ed.values[i - 1] > 1e-8) {
          next.push_back(Operator(q * ed.vectors.middleCols(start, i - start)));
          start = i;
        }
      }
    }
    spaces = std::move(next);
  }

  // Joint eigenvalues per refined subspace.
  Eigen::MatrixXcd vals(Eigen::Index(spaces.size()), Eigen::Index(basis.size()));
  for (size_t s = 0; s < spaces.size(); ++s) {
    const Operator& q = spaces[s];
    for (size_t j = 0; j < basis.size(); ++j)
      vals(Eigen::Index(s), Eigen::Index(j)) =
          (q.adjoint() * basis[j] * q).trace() / double(q.cols());
  }

  // Merge subspaces whose values agree on every basis element.
  CharacterSet cs;
  std::vector<int> owner(spaces.size(), -1);
  std::vector<Eigen::VectorXcd> reps;
  for (size_t s = 0; s < spaces.size(); ++s) {
    Eigen::VectorXcd row = vals.row(Eigen::Index(s));
    int found = -1;
    for (size_t r = 0; r < reps.size(); ++r)
      if ((reps[r] - row).lpNorm<Eigen::Infinity>() <= 1e-8) {
        found = int(r);
        break;
      }
    if (found < 0) {
      found = int(reps.size());
      reps.push_back(row);
      cs.classes.emplace_back();
    }
    owner[s] = found;
  }
  cs.values.resize(Eigen::Index(reps.size()), Eigen::Index(basis.size()));
  for (size_t r = 0; r < reps.size(); ++r) cs.values.row(Eigen::Index(r)) = reps[r];

  cs.diagonalizer = Operator(n, n);
  Eigen::Index col = 0;
  // Columns grouped by character class, classes in first-seen order.
  for (size_t r = 0; r < reps.size(); ++r)
    for (size_t s = 0; s < spaces.size(); ++s) {
      if (owner[s] != int(r)) continue;
      for (Eigen::Index c = 0; c < spaces[s].cols(); ++c) {
        cs.diagonalizer.col(col) = spaces[s].col(c);
        cs.classes[r].push_back(int(col));
        ++col;
      }
    }
  return cs;
}

// Evaluate character i on an arbitrary element of the algebra span.
inline cdouble character_value(const CharacterSet& cs, int i, const Operator& x) {
  const auto& cls = cs.classes.at(size_t(i));
  cdouble acc = 0.0;
  for (int c : cls) {
    Eigen::VectorXcd v = cs.diagonalizer.col(c);
    acc += v.dot(x * v);  // Eigen dot conjugates the left argument
  }
  return acc / double(cls.size());
}

// Gel'fand transform: pointwise character evaluations of a span element.
inline std::vector<cdouble> gelfand_transform(const Operator& a,
                                              const std::vector<Operator>& basis,
                                              const CharacterSet& cs) {
  Eigen::VectorXcd coef =
      detail::span_coefficients(basis, a, 1e-9, "gelfand_transform");
  std::vector<cdouble> out;
  for (int i = 0; i < cs.count(); ++i) {
    cdouble v = 0.0;
    for (Eigen::Index j = 0; j < coef.size(); ++j)
      v += coef[j] * cs.values(i, j);
    out.push_back(v);
  }
  return out;
}

// State: positive normalized functional phi(a) = tr(rho a).  When built from
// character weights the weights are kept for reference.
struct StateFunctional {
  Operator rho;
  std::optional<RVector> weights;

  cdouble operator()(const Operator& a) const { return (rho * a).trace(); }
};

inline StateFunctional state_from_density(const Operator& rho) {
  StateFunctional s;
  s.rho = rho;
  double trace_dev = std::abs(rho.trace() - cdouble(1.0, 0.0));
  if (trace_dev > 1e-8) throw NotPositive("state: trace must be 1");
  EigenDecomposition ed = hermitian_eig(rho);
  if (ed.values.minCoeff() < -1e-10)
    throw NotPositive("state: density matrix not positive semidefinite");
  return s;
}

inline StateFunctional state_from_weights(const CharacterSet& cs,
                                          const RVector& w) {
  if (w.size() != cs.count())
    throw OutOfRange("state_from_weights: weight count mismatch");
  const Eigen::Index n = cs.diagonalizer.rows();
  Operator rho = Operator::Zero(n, n);
  for (int i = 0; i < cs.count(); ++i) {
    if (w[i] < -1e-12) throw NotPositive("state_from_weights: negative weight");
    const auto& cls = cs.classes[size_t(i)];
    for (int c : cls) {
      Eigen::VectorXcd v = cs.diagonalizer.col(c);
      rho += (w[i] / double(cls.size())) * (v * v.adjoint());
    }
  }
  StateFunctional s = state_from_density(rho);
  s.weights = w;
  return s;
}

// Vector state phi(a) = <v, a v>.
inline StateFunctional vector_state(const CVector& v) {
  CVector u = v.normalized();
  return state_from_density(Operator(u * u.adjoint()));
}

struct GnsResult {
  std::vector<Operator> rep;        // images of the input basis
  CVector cyclic;                   // class of the identity
  Eigen::MatrixXcd basis_coeff;     // rows: GNS basis in span coordinates
};

// GNS representation from the sesquilinear form <a,b> = phi(a* b).
inline GnsResult gns(const std::vector<Operator>& basis,
                     const StateFunctional& phi) {
  const size_t nb = basis.size();
  Eigen::MatrixXcd gram(nb, nb);
  for (size_t i = 0; i < nb; ++i)
    for (size_t j = 0; j < nb; ++j)
      gram(Eigen::Index(i), Eigen::Index(j)) =
          phi(Operator(basis[i].adjoint() * basis[j]));
  Operator gop(nb, nb);
  for (size_t i = 0; i < nb; ++i)
    for (size_t j = 0; j < nb; ++j)
      gop(Eigen::Index(i), Eigen::Index(j)) = gram(Eigen::Index(i), Eigen::Index(j));
  EigenDecomposition ed = hermitian_eig(Operator(0.5 * (gop + gop.adjoint().eval())));
  double top = std::max(ed.values.maxCoeff(), 0.0);
  if (ed.values.minCoeff() < -1e-8 * std::max(1.0, top))
    throw NotPositive("gns: state is not positive on the algebra");

  // Quotient by the numerical null space, then orthonormalize.
  std::vector<Eigen::VectorXcd> coeff_rows;
  for (Eigen::Index k = ed.values.size() - 1; k >= 0; --k) {
    if (ed.values[k] <= 1e-10 * std::max(1.0, top)) continue;
    coeff_rows.push_back(ed.vectors.col(k) / std::sqrt(ed.values[k]));
  }
  const size_t r = coeff_rows.size();
  GnsResult out;
  out.basis_coeff.resize(Eigen::Index(r), Eigen::Index(nb));
  for (size_t l = 0; l < r; ++l)
    out.basis_coeff.row(Eigen::Index(l)) = coeff_rows[l].transpose();

  // pi(b)_{lk} = phi(e_l* b e_k) with e_l = sum_i coeff(l,i) a_i.
  auto represent = [&](const Operator& b) {
    Operator pi{Eigen::Index(r), Eigen::Index(r)};
    for (size_t l = 0; l < r; ++l)
      for (size_t k = 0; k < r; ++k) {
        cdouble acc = 0.0;
        for (size_t i = 0; i < nb; ++i)
          for (size_t j = 0; j < nb; ++j) {
            cdouble c = std::conj(out.basis_coeff(Eigen::Index(l), Eigen::Index(i))) *
                        out.basis_coeff(Eigen::Index(k), Eigen::Index(j));
            if (std::abs(c) < 1e-15) continue;
            acc += c * phi(Operator(basis[i].adjoint() * b * basis[j]));
          }
        pi(Eigen::Index(l), Eigen::Index(k)) = acc;
      }
    return pi;
  };
  for (const auto& a : basis) out.rep.push_back(represent(a));

  // Cyclic vector: coordinates of the class of 1.
  const Eigen::Index n = basis[0].rows();
  out.cyclic.resize(Eigen::Index(r));
  for (size_t l = 0; l < r; ++l) {
    cdouble acc = 0.0;
    for (size_t i = 0; i < nb; ++i)
      acc += std::conj(out.basis_coeff(Eigen::Index(l), Eigen::Index(i))) *
             phi(Operator(basis[i].adjoint() * identity(n)));
    out.cyclic[Eigen::Index(l)] = acc;
  }
  return out;
}

// Representation of an arbitrary span element through an existing GNS result.
inline Operator gns_represent(const GnsResult& g,
                              const std::vector<Operator>& basis,
                              const StateFunctional& phi, const Operator& b) {
  const Eigen::Index r = g.basis_coeff.rows();
  const Eigen::Index nb = g.basis_coeff.cols();
  Operator pi(r, r);
  for (Eigen::Index l = 0; l < r; ++l)
    for (Eigen::Index k = 0; k < r; ++k) {
      cdouble acc = 0.0;
      for (Eigen::Index i = 0; i < nb; ++i)
        for (Eigen::Index j = 0; j < nb; ++j) {
          cdouble c = std::conj(g.basis_coeff(l, i)) * g.basis_coeff(k, j);
          if (std::abs(c) < 1e-15) continue;
          acc += c * phi(Operator(basis[size_t(i)].adjoint() * b * basis[size_t(j)]));
        }
      pi(l, k) = acc;
    }
  return pi;
}

// Schur test: the representation is irreducible iff the commutant
// { X : [X, pi(a)] = 0 for all a } is one-dimensional.
inline bool is_irreducible(const std::vector<Operator>& rep) {
  if (rep.empty()) return false;
  const Eigen::Index n = rep[0].rows();
  const Eigen::Index n2 = n * n;
  Eigen::MatrixXcd sys(Eigen::Index(rep.size()) * n2, n2);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  for (size_t a = 0; a < rep.size(); ++a) {
    // vec(PX - XP) = (kron(I, P) - kron(P^T, I)) vec(X), column-major vec.
    Eigen::MatrixXcd p = rep[a];
    Eigen::MatrixXcd kron1 = Eigen::MatrixXcd::Zero(n2, n2);
    Eigen::MatrixXcd kron2 = Eigen::MatrixXcd::Zero(n2, n2);
    for (Eigen::Index i = 0; i < n; ++i)
      kron1.block(i * n, i * n, n, n) = p;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        kron2.block(i * n, j * n, n, n) = p(j, i) * id;
    sys.middleRows(Eigen::Index(a) * n2, n2) = kron1 - kron2;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys);
  const auto& sv = svd.singularValues();
  double cutoff = std::max(1e-8 * (sv.size() ? sv[0] : 0.0), 1e-12);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return (n2 - rank) == 1;
}

}  // namespace spectre
