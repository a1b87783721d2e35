#pragma once
// 1+1-dimensional lattice spacetimes with static metric g = -N^2 dt^2 + a^2 dx^2:
// causal relations over the cone stencil, Lorentzian distance by longest-path
// dynamic programming and by the global variational (cone-program) formula,
// explicit equality-witness functions, and the reverse Cauchy-Schwarz check.

#include "spectre/cone.hpp"
#include "spectre/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace spectre {

enum class Topology { Interval, Periodic };

struct LatticeSpacetime {
  int nt = 0, nx = 0;
  double dt = 0.0, dx = 0.0;
  RVector lapse;  // N(x) > 0
  RVector scale;  // a(x) > 0
  Topology topology = Topology::Interval;

  int node(int t, int x) const { return t * nx + x; }
  int size() const { return nt * nx; }
};

struct Node {
  int t = 0, x = 0;
};

inline LatticeSpacetime minkowski_lattice(int nt, int nx, double dt, double dx,
                                          Topology topology = Topology::Interval) {
  LatticeSpacetime m;
  m.nt = nt;
  m.nx = nx;
  m.dt = dt;
  m.dx = dx;
  m.lapse = RVector::Ones(nx);
  m.scale = RVector::Ones(nx);
  m.topology = topology;
  return m;
}

inline void check_lattice(const LatticeSpacetime& m) {
  if (m.nt < 2 || m.nx < 2) throw LatticeTooSmall("lattice needs nt,nx >= 2");
  if (m.dt <= 0 || m.dx <= 0) throw DomainError("lattice steps must be positive");
  if (m.lapse.size() != m.nx || m.scale.size() != m.nx)
    throw DomainError("lapse/scale must have one value per space node");
  if (m.lapse.minCoeff() <= 0 || m.scale.minCoeff() <= 0)
    throw DomainError("lapse and scale must be strictly positive");
}

namespace detail {

struct ConeEdge {
  int k = 0;          // spatial displacement per time step
  int xto = 0;        // destination column (after wrap for periodic lattices)
  double weight = 0;  // proper-time length, 0 on the cone boundary
  bool strict = false;  // strictly inside the cone
};

// Causal edges (t,x) -> (t+1, x+k): |k| a dx <= N dt with the metric sampled
// at the spatial midpoint of the step.
inline std::vector<std::vector<ConeEdge>> cone_edges(const LatticeSpacetime& m) {
  check_lattice(m);
  std::vector<std::vector<ConeEdge>> edges(size_t(m.nx));
  for (int x = 0; x < m.nx; ++x) {
    int kbig = int(std::ceil(m.lapse.maxCoeff() * m.dt /
                             (m.scale.minCoeff() * m.dx))) + 1;
    for (int k = -kbig; k <= kbig; ++k) {
      int xr = x + k;
      if (m.topology == Topology::Interval) {
        if (xr < 0 || xr >= m.nx) continue;
      } else {
        xr = ((xr % m.nx) + m.nx) % m.nx;
      }
      double nmid = 0.5 * (m.lapse[x] + m.lapse[xr]);
      double amid = 0.5 * (m.scale[x] + m.scale[xr]);
      double timelen = nmid * m.dt;
      double spacelen = std::abs(double(k)) * amid * m.dx;
      if (spacelen > timelen * (1.0 + 1e-12)) continue;
      ConeEdge e;
      e.k = k;
      e.xto = xr;
      double w2 = timelen * timelen - spacelen * spacelen;
      e.weight = std::sqrt(std::max(0.0, w2));
      e.strict = spacelen < timelen * (1.0 - 1e-12);
      edges[size_t(x)].push_back(e);
    }
  }
  return edges;
}

}  // namespace detail

enum class CausalKind { Chronological, NullCausal, Unrelated };

struct CausalRelationResult {
  CausalKind kind = CausalKind::Unrelated;
  std::optional<std::vector<Node>> witness;  // a causal path p -> q, if any
};

// DAG reachability p -> q; chronological when a connecting path contains at
// least one strictly timelike step (the lattice analogue of the push-up
// property: mixed null/timelike paths can be deformed to timelike ones).
inline CausalRelationResult causal_relation(const LatticeSpacetime& m, Node p,
                                            Node q) {
  if (p.t < 0 || p.t >= m.nt || q.t < 0 || q.t >= m.nt || p.x < 0 ||
      p.x >= m.nx || q.x < 0 || q.x >= m.nx)
    throw OutOfRange("causal_relation: node outside lattice");
  CausalRelationResult res;
  if (q.t < p.t) return res;
  if (q.t == p.t) {
    if (q.x == p.x) {
      res.kind = CausalKind::NullCausal;  // p <= p, zero-length path
      res.witness = std::vector<Node>{p};
    }
    return res;
  }
  auto edges = detail::cone_edges(m);
  const int neg = -1;
  // reach[x]: -1 unreachable, 0 reachable null-only, 1 reachable with a
  // strict step somewhere along the path.  prev stores a path witness.
  std::vector<int> reach(size_t(m.nx), neg), next(size_t(m.nx));
  std::vector<std::vector<int>> prev(size_t(m.nt), std::vector<int>(size_t(m.nx), neg));
  reach[size_t(p.x)] = 0;
  for (int t = p.t; t < q.t; ++t) {
    std::fill(next.begin(), next.end(), neg);
    for (int x = 0; x < m.nx; ++x) {
      if (reach[size_t(x)] < 0) continue;
      for (const auto& e : edges[size_t(x)]) {
        int level = std::max(reach[size_t(x)], e.strict ? 1 : 0);
        if (level > next[size_t(e.xto)]) {
          next[size_t(e.xto)] = level;
          prev[size_t(t + 1)][size_t(e.xto)] = x;
        }
      }
    }
    reach.swap(next);
  }
  if (reach[size_t(q.x)] < 0) return res;
  res.kind = reach[size_t(q.x)] >= 1 ? CausalKind::Chronological
                                     : CausalKind::NullCausal;
  std::vector<Node> path;
  int x = q.x;
  for (int t = q.t; t > p.t; --t) {
    path.push_back(Node{t, x});
    x = prev[size_t(t)][size_t(x)];
    if (x < 0) break;
  }
  path.push_back(p);
  std::reverse(path.begin(), path.end());
  res.witness = path;
  return res;
}

// Longest-path proper time from p to every node (negative infinity where
// unreachable); forward sweep over time slices.
inline RVector lorentz_distance_field_from(const LatticeSpacetime& m, Node p) {
  auto edges = detail::cone_edges(m);
  const double ninf = -std::numeric_limits<double>::infinity();
  RVector d = RVector::Constant(m.size(), ninf);
  d[m.node(p.t, p.x)] = 0.0;
  for (int t = p.t; t + 1 < m.nt; ++t)
    for (int x = 0; x < m.nx; ++x) {
      double cur = d[m.node(t, x)];
      if (cur == ninf) continue;
      for (const auto& e : edges[size_t(x)]) {
        double cand = cur + e.weight;
        double& dst = d[m.node(t + 1, e.xto)];
        if (cand > dst) dst = cand;
      }
    }
  return d;
}

// Longest-path proper time to q from every node.
inline RVector lorentz_distance_field_to(const LatticeSpacetime& m, Node q) {
  auto edges = detail::cone_edges(m);
  const double ninf = -std::numeric_limits<double>::infinity();
  RVector d = RVector::Constant(m.size(), ninf);
  d[m.node(q.t, q.x)] = 0.0;
  for (int t = q.t; t > 0; --t)
    for (int x = 0; x < m.nx; ++x)
      for (const auto& e : edges[size_t(x)]) {
        double up = d[m.node(t, e.xto)];
        if (up == ninf) continue;
        double cand = up + e.weight;
        double& dst = d[m.node(t - 1, x)];
        if (cand > dst) dst = cand;
      }
  return d;
}

// Lorentzian distance by path DP; 0 when q is not in the causal future of p.
inline double lorentz_distance_paths(const LatticeSpacetime& m, Node p, Node q) {
  if (q.t < p.t) return 0.0;
  double v = lorentz_distance_field_from(m, p)[m.node(q.t, q.x)];
  return std::isfinite(v) ? v : 0.0;
}

struct VariationalDistanceResult {
  double distance = 0.0;
  RVector f;  // optimal steep function (gauge f(p) = 0)
  SolveStatus status = SolveStatus::Optimal;
};

// Global variational formula: minimize f(q) - f(p) over grid functions with
// (delta_t f)/dt >= N sqrt(1 + ((delta_x f)/(a dx))^2) per cell (discrete
// "g(grad f, grad f) <= -1 with past-directed gradient"), then clamp at 0.
// Each cell is constrained by BOTH its one-sided spatial differences (two
// separate cones): with a single one-sided difference only the uphill column
// pays for a spatial jump, and its value can grow without bound while the
// downhill side undercuts f(q) - f(p) below the true distance.  One auxiliary
// constraint f(q)-f(p) >= 0 keeps the spacelike case bounded; it cannot bind
// when the true minimum is positive, and when it binds the final clamp
// max(0, .) would have produced the same value anyway.  (Binding at 0 is far
// better conditioned than a negative floor: f = lapse-scaled time is feasible
// and already optimal for unrelated pairs.)
inline VariationalDistanceResult lorentz_distance_variational(
    const LatticeSpacetime& m, Node p, Node q, double tol = 1e-6) {
  check_lattice(m);
  ConeProgram prog;
  prog.n = m.size();
  prog.objective = RVector::Zero(prog.n);
  prog.objective[m.node(q.t, q.x)] += 1.0;
  prog.objective[m.node(p.t, p.x)] -= 1.0;

  auto scalar_ge = [&](const std::vector<std::pair<int, double>>& coeffs,
                       double e) {
    SocConstraint c;
    c.A.resize(1, prog.n);  // zero row: plain linear inequality d'x + e >= 0
    c.b = RVector::Zero(1);
    c.d.resize(prog.n);
    for (auto& [i, v] : coeffs) c.d.coeffRef(i) += v;
    c.e = e;
    prog.constraints.push_back(std::move(c));
  };

  auto cell_cone = [&](int t, int x, int xa, int xb) {
    SocConstraint c;
    c.A.resize(2, prog.n);
    std::vector<Eigen::Triplet<double>> trip;
    double sx = m.lapse[size_t(x)] / (m.scale[size_t(x)] * m.dx);
    trip.emplace_back(1, m.node(t, xb), sx);
    trip.emplace_back(1, m.node(t, xa), -sx);
    c.A.setFromTriplets(trip.begin(), trip.end());
    c.b = RVector::Zero(2);
    c.b[0] = m.lapse[size_t(x)];
    c.d.resize(prog.n);
    c.d.coeffRef(m.node(t + 1, x)) += 1.0 / m.dt;
    c.d.coeffRef(m.node(t, x)) -= 1.0 / m.dt;
    c.e = 0.0;
    prog.constraints.push_back(std::move(c));
  };
  for (int t = 0; t + 1 < m.nt; ++t)
    for (int x = 0; x < m.nx; ++x) {
      if (m.topology == Topology::Periodic) {
        cell_cone(t, x, x, (x + 1) % m.nx);                  // forward
        cell_cone(t, x, (x + m.nx - 1) % m.nx, x);           // backward
      } else {
        if (x + 1 < m.nx) cell_cone(t, x, x, x + 1);         // forward
        if (x > 0) cell_cone(t, x, x - 1, x);                // backward
      }
    }

  // Boundedness guard and gauge fixing, scaled like the cone rows (1/dt) so
  // the splitting treats all constraints at comparable magnitude.
  const double s = 1.0 / m.dt;
  scalar_ge({{m.node(q.t, q.x), s}, {m.node(p.t, p.x), -s}}, 0.0);
  scalar_ge({{m.node(p.t, p.x), s}}, 0.0);
  scalar_ge({{m.node(p.t, p.x), -s}}, 0.0);

  ConeSolution sol = solve_cone_program(prog, tol);
  VariationalDistanceResult r;
  r.f = sol.x;
  r.status = sol.status;
  r.distance = std::max(0.0, sol.objective);
  return r;
}

// Metric pairing of tangent 2-vectors (t-component first) at a node with
// lapse nval and scale aval.
inline double lorentz_dot(double nval, double aval, const Eigen::Vector2d& v,
                          const Eigen::Vector2d& w) {
  return -nval * nval * v[0] * w[0] + aval * aval * v[1] * w[1];
}

struct CsReport {
  double lhs = 0.0;  // |<v,w>|
  double rhs = 0.0;  // sqrt(<v,v><w,w>)
  bool holds = false;
  bool equality = false;
  bool collinear = false;
};

// Reverse ("wrong-way") Cauchy-Schwarz for timelike vectors:
// |<v,w>| >= sqrt(<v,v><w,w>), equality iff collinear.
inline CsReport wrongway_cs_check(const Eigen::Vector2d& v,
                                  const Eigen::Vector2d& w, double nval,
                                  double aval) {
  double vv = lorentz_dot(nval, aval, v, v);
  double ww = lorentz_dot(nval, aval, w, w);
  if (vv >= 0 || ww >= 0)
    throw NotTimelike("wrongway_cs_check: both vectors must be timelike");
  CsReport r;
  r.lhs = std::abs(lorentz_dot(nval, aval, v, w));
  r.rhs = std::sqrt(vv * ww);
  r.holds = r.lhs >= r.rhs - 1e-9 * std::max(1.0, r.rhs);
  r.equality = std::abs(r.lhs - r.rhs) <= 1e-9 * std::max(1.0, r.rhs);
  r.collinear = std::abs(v[0] * w[1] - v[1] * w[0]) <=
                1e-9 * std::max(1.0, v.norm() * w.norm());
  return r;
}

// Central-difference g(grad f, grad f) at interior cell (t,x); NaN-free only
// for interior nodes.
inline double eikonal_quadratic(const LatticeSpacetime& m, const RVector& f,
                                int t, int x) {
  int xm = x - 1, xp = x + 1;
  if (m.topology == Topology::Periodic) {
    xm = (x - 1 + m.nx) % m.nx;
    xp = (x + 1) % m.nx;
  }
  double ft = (f[m.node(t + 1, x)] - f[m.node(t - 1, x)]) / (2.0 * m.dt);
  double fx = (f[m.node(t, xp)] - f[m.node(t, xm)]) / (2.0 * m.dx);
  double nv = m.lapse[x], av = m.scale[x];
  return -(ft / nv) * (ft / nv) + (fx / av) * (fx / av);
}

struct EikonalReport {
  int cells = 0;          // strictly chronological interior cells examined
  int ok = 0;             // residual <= 0.1
  double frac_ok = 0.0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
};

struct WitnessResult {
  RVector f;
  double gap = 0.0;            // |(f(q)-f(p)) - d(p,q)| (or |f(q)-f(p)|)
  double f_q_minus_f_p = 0.0;
  CausalKind relation = CausalKind::Unrelated;
  EikonalReport eikonal;
  bool boundary_flag = false;  // p or q touches the lattice boundary
};

namespace detail {

inline double dplus(const RVector& field, int idx) {
  double v = field[idx];
  return std::isfinite(v) ? v : 0.0;
}

// Interior cells strictly chronologically related (either direction) to at
// least one construction vertex -- the region where the summed-distance
// construction asserts the eikonal property.
inline EikonalReport eikonal_report(const LatticeSpacetime& m, const RVector& f,
                                    const std::vector<Node>& vertices) {
  std::vector<char> mark(size_t(m.size()), 0);
  for (const auto& v : vertices) {
    RVector fwd = lorentz_distance_field_from(m, v);
    RVector bwd = lorentz_distance_field_to(m, v);
    for (int i = 0; i < m.size(); ++i)
      if ((std::isfinite(fwd[i]) && fwd[i] > 0) ||
          (std::isfinite(bwd[i]) && bwd[i] > 0))
        mark[size_t(i)] = 1;
  }
  EikonalReport rep;
  double sum = 0.0;
  int x0 = (m.topology == Topology::Periodic) ? 0 : 1;
  int x1 = (m.topology == Topology::Periodic) ? m.nx : m.nx - 1;
  for (int t = 1; t + 1 < m.nt; ++t)
    for (int x = x0; x < x1; ++x) {
      if (!mark[size_t(m.node(t, x))]) continue;
      double res = std::max(0.0, eikonal_quadratic(m, f, t, x) + 1.0);
      ++rep.cells;
      if (res <= 0.1) ++rep.ok;
      rep.max_residual = std::max(rep.max_residual, res);
      sum += res;
    }
  if (rep.cells) {
    rep.frac_ok = double(rep.ok) / rep.cells;
    rep.mean_residual = sum / rep.cells;
  }
  return rep;
}

}  // namespace detail

// Explicit near-optimal steep function: sums of cone distance functions from
// a covering of a Cauchy slice, plus anchor distances, realizing
// f(q) - f(p) ~ d(p,q) for related pairs and ~ 0 for unrelated ones.
inline WitnessResult equality_witness(const LatticeSpacetime& m, Node p, Node q,
                                      double eps) {
  check_lattice(m);
  WitnessResult res;
  auto rel_pq = causal_relation(m, p, q).kind;
  auto rel_qp = causal_relation(m, q, p).kind;
  bool reversed = rel_pq == CausalKind::Unrelated &&
                  rel_qp != CausalKind::Unrelated;  // q precedes p
  bool related =
      rel_pq != CausalKind::Unrelated || rel_qp != CausalKind::Unrelated;
  Node lo = reversed ? q : p;  // causally earlier point when related
  Node hi = reversed ? p : q;
  res.relation = rel_pq;

  res.boundary_flag = p.t == 0 || p.t == m.nt - 1 || q.t == 0 ||
                      q.t == m.nt - 1 ||
                      (m.topology == Topology::Interval &&
                       (p.x == 0 || p.x == m.nx - 1 || q.x == 0 || q.x == m.nx - 1));

  // Cauchy slice through the later point (related case) or through the later
  // of the two points (unrelated case, both must lie at or below it).
  int ts = related ? hi.t : std::max(p.t, q.t);
  if (ts < 1 || ts + 1 > m.nt - 1 || std::min(p.t, q.t) < 1)
    throw LatticeTooSmall("equality_witness: need room for auxiliary points");

  std::vector<Node> vertices;
  RVector f = RVector::Zero(m.size());

  if (related) {
    // Anchors: lo' one step below lo, hi' one step above hi.
    Node lo_prime{lo.t - 1, lo.x};
    Node hi_prime{ts + 1, hi.x};
    // Covering sums: future cones from the slice below S (minus J^-(hi)),
    // past cones from the slice above S (minus J^+(lo)).
    RVector to_hi = lorentz_distance_field_to(m, hi);
    RVector from_lo = lorentz_distance_field_from(m, lo);
    for (int x = 0; x < m.nx; ++x) {
      Node below{ts - 1, x};
      if (!std::isfinite(to_hi[m.node(below.t, below.x)]))  // outside J^-(hi)
        f += lorentz_distance_field_from(m, below).unaryExpr([](double v) {
          return std::isfinite(v) ? v : 0.0;
        });
      Node above{ts + 1, x};
      if (!std::isfinite(from_lo[m.node(above.t, above.x)]))  // outside J^+(lo)
        f -= lorentz_distance_field_to(m, above).unaryExpr([](double v) {
          return std::isfinite(v) ? v : 0.0;
        });
    }
    f += lorentz_distance_field_from(m, lo_prime).unaryExpr([](double v) {
      return std::isfinite(v) ? v : 0.0;
    });
    vertices = {lo, hi, lo_prime, hi_prime};

    double diff = f[m.node(hi.t, hi.x)] - f[m.node(lo.t, lo.x)];
    double d_lo_hi = lorentz_distance_paths(m, lo, hi);
    res.f_q_minus_f_p = reversed ? -diff : diff;
    res.gap = std::abs(diff - d_lo_hi);
  } else {
    // Unrelated pair: anchors one step below each point; covering cones
    // exclude the causal sets of both points.
    Node pa = (p.t <= q.t) ? p : q;  // point at or below the slice
    Node qa = (p.t <= q.t) ? q : p;  // point on the slice level ts
    Node pa_plus{ts, pa.x};          // slice point causally above pa
    Node pa_prime{pa.t - 1, pa.x};
    Node qa_prime{qa.t - 1, qa.x};
    RVector to_pa_plus = lorentz_distance_field_to(m, pa_plus);
    RVector to_qa = lorentz_distance_field_to(m, qa);
    RVector from_pa = lorentz_distance_field_from(m, pa);
    RVector from_qa = lorentz_distance_field_from(m, qa);
    for (int x = 0; x < m.nx; ++x) {
      Node below{ts - 1, x};
      int ib = m.node(below.t, below.x);
      if (!std::isfinite(to_pa_plus[ib]) && !std::isfinite(to_qa[ib]))
        f += lorentz_distance_field_from(m, below).unaryExpr([](double v) {
          return std::isfinite(v) ? v : 0.0;
        });
      Node above{ts + 1, x};
      int ia = m.node(above.t, above.x);
      if (!std::isfinite(from_pa[ia]) && !std::isfinite(from_qa[ia]))
        f -= lorentz_distance_field_to(m, above).unaryExpr([](double v) {
          return std::isfinite(v) ? v : 0.0;
        });
    }
    f += lorentz_distance_field_from(m, pa_prime).unaryExpr([](double v) {
      return std::isfinite(v) ? v : 0.0;
    });
    f += lorentz_distance_field_from(m, qa_prime).unaryExpr([](double v) {
      return std::isfinite(v) ? v : 0.0;
    });
    vertices = {pa, qa, pa_prime, qa_prime, pa_plus};
    res.f_q_minus_f_p = f[m.node(q.t, q.x)] - f[m.node(p.t, p.x)];
    res.gap = std::abs(res.f_q_minus_f_p);
  }

  res.f = f;
  res.eikonal = detail::eikonal_report(m, f, vertices);
  return res;
}

}  // namespace spectre
