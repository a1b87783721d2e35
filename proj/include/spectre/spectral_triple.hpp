#pragma once
// Finite spectral triples: axiom validation, the mod-8 sign table for real
// structures, product triples, represented differential forms and junk,
// inner fluctuations of the Dirac operator, and the spectral action.

#include "spectre/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spectre {

// Antilinear real structure J = C ∘ K (matrix times entrywise conjugation).
struct RealStructure {
  Operator c;
  int ko_dim = 0;
};

struct FiniteSpectralTriple {
  int hilbert_dim = 0;
  std::vector<Operator> algebra_basis;
  Operator dirac;
  std::optional<Operator> grading;
  std::optional<RealStructure> real_structure;
  bool unital = true;
};

struct KOSigns {
  int eps = 1;
  int eps_prime = 1;
  std::optional<int> eps_double_prime;  // absent for odd n
};

inline KOSigns ko_signs(int n) {
  if (n < 0 || n > 7) throw OutOfRange("ko_signs: n must be in 0..7");
  static constexpr int eps[8] = {1, 1, -1, -1, -1, -1, 1, 1};
  static constexpr int eps_p[8] = {1, -1, 1, 1, 1, -1, 1, 1};
  static constexpr int eps_pp[4] = {1, -1, 1, -1};  // n = 0, 2, 4, 6
  KOSigns s;
  s.eps = eps[n];
  s.eps_prime = eps_p[n];
  if (n % 2 == 0) s.eps_double_prime = eps_pp[n / 2];
  return s;
}

struct CheckResult {
  std::string name;
  double residual = 0.0;
  bool pass = true;
  std::string note;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Conjugation of a linear operator by the antilinear J = C∘K:
// J A J^{-1} = C conj(A) C^{-1}.
inline Operator antilinear_conjugate(const RealStructure& rs, const Operator& a) {
  return rs.c * a.conjugate() * rs.c.inverse();
}

// Opposite-algebra element b° = J b* J^{-1} = C b^T C^{-1}.
inline Operator opposite_element(const RealStructure& rs, const Operator& b) {
  return rs.c * b.transpose() * rs.c.inverse();
}

namespace detail {

// Least-squares membership of x in span(basis); returns the residual
// Frobenius norm (coefficients are complex).
inline double span_residual(const std::vector<Operator>& basis,
                            const Operator& x) {
  if (basis.empty()) return x.norm();
  const Eigen::Index n2 = x.size();
  Eigen::MatrixXcd m(n2, Eigen::Index(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    m.col(Eigen::Index(j)) =
        Eigen::Map<const Eigen::VectorXcd>(basis[j].data(), n2);
  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(x.data(), n2);
  Eigen::VectorXcd coef = m.colPivHouseholderQr().solve(v);
  return (m * coef - v).norm();
}

}  // namespace detail

inline bool in_algebra_span(const FiniteSpectralTriple& t, const Operator& x,
                            double tol = 1e-9) {
  return detail::span_residual(t.algebra_basis, x) <=
         tol * std::max(1.0, x.norm());
}

inline ValidationReport validate_triple(const FiniteSpectralTriple& t,
                                        double tol = 1e-10) {
  ValidationReport rep;
  auto add = [&](const std::string& name, double residual,
                 const std::string& note = "") {
    rep.checks.push_back({name, residual, residual <= tol, note});
  };

  double finite = 0.0;
  for (const auto& a : t.algebra_basis)
    if (!all_finite(a)) finite = 1.0;
  if (!all_finite(t.dirac)) finite = 1.0;
  add("entries_finite", finite);

  add("dirac_hermitian",
      operator_norm(Operator(t.dirac - t.dirac.adjoint().eval())));

  double adj_res = 0.0;
  for (const auto& a : t.algebra_basis)
    adj_res = std::max(adj_res,
                       detail::span_residual(t.algebra_basis, a.adjoint()));
  add("algebra_adjoint_closed", adj_res);

  if (t.unital)
    add("identity_in_span",
        detail::span_residual(t.algebra_basis, identity(t.hilbert_dim)));

  if (t.grading) {
    const Operator& g = *t.grading;
    add("grading_involutive",
        operator_norm(Operator(g * g - identity(t.hilbert_dim))));
    add("grading_hermitian", operator_norm(Operator(g - g.adjoint().eval())));
    double comm = 0.0;
    for (const auto& a : t.algebra_basis)
      comm = std::max(comm, operator_norm(commutator(g, a)));
    add("grading_commutes_algebra", comm);
    add("grading_anticommutes_dirac",
        operator_norm(anticommutator(g, t.dirac)));
  }

  if (t.real_structure) {
    const RealStructure& rs = *t.real_structure;
    KOSigns s = ko_signs(rs.ko_dim);
    add("real_isometry",
        operator_norm(Operator(rs.c * rs.c.adjoint() - identity(t.hilbert_dim))));
    // J² v = C conj(C) v.
    add("real_j_squared",
        operator_norm(Operator(rs.c * rs.c.conjugate() -
                               double(s.eps) * identity(t.hilbert_dim))));
    // J D = ε' D J  ⇔  C conj(D) = ε' D C.
    add("real_jd_commutation",
        operator_norm(Operator(rs.c * t.dirac.conjugate() -
                               double(s.eps_prime) * t.dirac * rs.c)));
    if (t.grading) {
      if (s.eps_double_prime) {
        add("real_jgamma_commutation",
            operator_norm(Operator(rs.c * t.grading->conjugate() -
                                   double(*s.eps_double_prime) *
                                       (*t.grading) * rs.c)));
      } else {
        add("real_jgamma_commutation", 1.0,
            "even triple carries a grading but the KO-dimension is odd");
      }
    }
    double order0 = 0.0, order1 = 0.0;
    for (const auto& a : t.algebra_basis) {
      Operator da = commutator(t.dirac, a);
      for (const auto& b : t.algebra_basis) {
        Operator bo = opposite_element(rs, b);
        order0 = std::max(order0, operator_norm(commutator(a, bo)));
        order1 = std::max(order1, operator_norm(commutator(da, bo)));
      }
    }
    add("real_order_zero", order0);
    add("real_order_one", order1);
  }

  rep.checks.push_back({"compact_resolvent", 0.0, true,
                        "trivially satisfied (finite dimension)"});
  return rep;
}

inline FiniteSpectralTriple product_triple(const FiniteSpectralTriple& t1,
                                           const FiniteSpectralTriple& t2) {
  if (!t1.grading)
    throw MissingGrading("product_triple: first factor must be even");
  FiniteSpectralTriple p;
  p.hilbert_dim = t1.hilbert_dim * t2.hilbert_dim;
  for (const auto& a : t1.algebra_basis)
    for (const auto& b : t2.algebra_basis)
      p.algebra_basis.push_back(kron(a, b));
  p.dirac = kron(t1.dirac, identity(t2.hilbert_dim)) +
            kron(*t1.grading, t2.dirac);
  if (t1.grading && t2.grading) p.grading = kron(*t1.grading, *t2.grading);
  if (t1.real_structure && t2.real_structure) {
    RealStructure rs;
    rs.c = kron(t1.real_structure->c, t2.real_structure->c);
    rs.ko_dim = (t1.real_structure->ko_dim + t2.real_structure->ko_dim) % 8;
    p.real_structure = rs;
  }
  p.unital = t1.unital && t2.unital;
  return p;
}

// Element of the universal differential algebra: a sum of coefficient-word
// pairs, each word (a0, a1, ..., ap) standing for a0 da1 ... dap.
struct UniversalFormWord {
  int degree = 0;
  std::vector<std::pair<cdouble, std::vector<Operator>>> terms;
};

inline Operator represent_form(const FiniteSpectralTriple& t,
                               const UniversalFormWord& w) {
  Operator out = Operator::Zero(t.hilbert_dim, t.hilbert_dim);
  for (const auto& [coef, word] : w.terms) {
    if (int(word.size()) != w.degree + 1)
      throw Error("represent_form: word length does not match degree");
    Operator acc = word[0];
    for (size_t i = 1; i < word.size(); ++i)
      acc = acc * commutator(t.dirac, word[i]);
    out += coef * acc;
  }
  return out;
}

// d(a0 da1 ... da_{p-1}) = 1 da0 da1 ... da_{p-1}.
inline UniversalFormWord differential(const FiniteSpectralTriple& t,
                                      const UniversalFormWord& w) {
  UniversalFormWord dw;
  dw.degree = w.degree + 1;
  for (const auto& [coef, word] : w.terms) {
    std::vector<Operator> lifted;
    lifted.push_back(identity(t.hilbert_dim));
    for (const auto& a : word) lifted.push_back(a);
    dw.terms.emplace_back(coef, lifted);
  }
  return dw;
}

// All degree-(p-1) words (a0, ..., a_{p-1}) over the algebra basis — the
// documented default generator set for junk extraction.
inline std::vector<UniversalFormWord> default_generator_words(
    const FiniteSpectralTriple& t, int p) {
  std::vector<UniversalFormWord> out;
  const int len = p;  // degree p-1 words have p entries
  std::vector<size_t> idx(size_t(len), 0);
  const size_t nb = t.algebra_basis.size();
  if (nb == 0 || len == 0) return out;
  while (true) {
    UniversalFormWord w;
    w.degree = p - 1;
    std::vector<Operator> word;
    for (int i = 0; i < len; ++i) word.push_back(t.algebra_basis[idx[size_t(i)]]);
    w.terms.emplace_back(cdouble(1.0, 0.0), word);
    out.push_back(w);
    int pos = len - 1;
    while (pos >= 0 && ++idx[size_t(pos)] == nb) {
      idx[size_t(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

// Orthonormal (Frobenius) basis of π(d ker π) at degree p: junk forms.
inline std::vector<Operator> junk_subspace(
    const FiniteSpectralTriple& t, int p,
    const std::vector<UniversalFormWord>& generator_words) {
  if (p < 1) throw OutOfRange("junk_subspace: p must be >= 1");
  const Eigen::Index n2 = Eigen::Index(t.hilbert_dim) * t.hilbert_dim;
  const Eigen::Index m = Eigen::Index(generator_words.size());
  if (m == 0) return {};
  Eigen::MatrixXcd rep(n2, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Operator pi = represent_form(t, generator_words[size_t(j)]);
    rep.col(j) = Eigen::Map<const Eigen::VectorXcd>(pi.data(), n2);
  }
  // Numerical kernel of the representation on the generator span.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      rep, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff = (sv.size() ? sv[0] : 0.0) * 1e-8;
  std::vector<Eigen::VectorXcd> kernel;
  for (Eigen::Index j = 0; j < sv.size(); ++j)
    if (sv[j] <= cutoff) kernel.push_back(svd.matrixV().col(j));
  for (Eigen::Index j = sv.size(); j < m; ++j)
    kernel.push_back(svd.matrixV().col(j));
  if (kernel.empty()) return {};

  Eigen::MatrixXcd dk(n2, Eigen::Index(kernel.size()));
  for (size_t kidx = 0; kidx < kernel.size(); ++kidx) {
    Operator acc = Operator::Zero(t.hilbert_dim, t.hilbert_dim);
    for (Eigen::Index j = 0; j < m; ++j) {
      cdouble coef = kernel[kidx][j];
      if (std::abs(coef) < 1e-15) continue;
      UniversalFormWord dw = differential(t, generator_words[size_t(j)]);
      acc += coef * represent_form(t, dw);
    }
    dk.col(Eigen::Index(kidx)) = Eigen::Map<const Eigen::VectorXcd>(acc.data(), n2);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd2(dk, Eigen::ComputeThinU);
  const auto& sv2 = svd2.singularValues();
  double cutoff2 = (sv2.size() ? sv2[0] : 0.0) * 1e-8;
  std::vector<Operator> basis;
  for (Eigen::Index j = 0; j < sv2.size(); ++j) {
    if (sv2[j] <= cutoff2 || sv2[j] == 0.0) continue;
    Operator b(t.hilbert_dim, t.hilbert_dim);
    Eigen::Map<Eigen::VectorXcd>(b.data(), n2) = svd2.matrixU().col(j);
    basis.push_back(b);
  }
  return basis;
}

inline Operator fluctuate_dirac(const FiniteSpectralTriple& t,
                                const Operator& a) {
  if (!t.real_structure)
    throw NoRealStructure("fluctuate_dirac: triple has no real structure");
  if (operator_norm(Operator(a - a.adjoint().eval())) >
      1e-10 * std::max(1.0, operator_norm(a)))
    throw NotHermitian("fluctuate_dirac: gauge potential must be Hermitian");
  KOSigns s = ko_signs(t.real_structure->ko_dim);
  return t.dirac + a +
         double(s.eps_prime) * antilinear_conjugate(*t.real_structure, a);
}

inline double spectral_action(const FiniteSpectralTriple& t, const Operator& a,
                              const std::function<double(double)>& f,
                              double lambda) {
  if (lambda <= 0) throw OutOfRange("spectral_action: Lambda must be positive");
  Operator da = t.real_structure ? fluctuate_dirac(t, a) : Operator(t.dirac + a);
  auto ed = hermitian_eig(da);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ed.values.size(); ++i)
    s += f(ed.values[i] / lambda);
  return s;
}

}  // namespace spectre
