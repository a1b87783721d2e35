// Command-line front end: load JSON fixtures, run library computations, emit
// JSON/CSV reports.
//
// Exit codes: 0 success, 1 validation failure (axioms broken / mismatch),
// 2 I/O or schema error, 3 solver failure.  Errors are emitted as
// machine-readable JSON on stderr.  Numeric output uses 17 significant
// digits (lossless decimal round-trip); CSV always uses '.' decimals.

#include "spectre/connes_distance.hpp"
#include "spectre/dixmier.hpp"
#include "spectre/gelfand.hpp"
#include "spectre/io.hpp"
#include "spectre/models.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
using namespace spectre;
using io::fmt17;

struct ValidationFailed : Error {
  using Error::Error;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open input file: " + path);
  return json::parse(in);  // json::parse_error carries the byte position
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw DomainError("cannot open output file: " + out_path);
  out << text;
}

// Numbers rendered at 17 significant digits; json dump with no locale.
std::string dump(const json& j) {
  return j.dump(2) + "\n";
}

json number17(double x) {
  // Parse the 17-digit decimal back so the dumped JSON literal is exactly
  // the shortest lossless decimal form.
  return json::parse(fmt17(x));
}

json report_to_json(const ValidationReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name},
                      {"residual", number17(c.residual)},
                      {"pass", c.pass},
                      {"note", c.note}});
  return {{"all_pass", rep.all_pass()}, {"checks", checks}};
}

Node parse_node(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw DomainError("node must be 't,x': " + s);
  return Node{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& in, double tol, const std::string& out) {
  auto t = io::triple_from_json(load_json(in));
  auto rep = validate_triple(t, tol);
  emit(dump(report_to_json(rep)), out);
  if (!rep.all_pass()) throw ValidationFailed("spectral triple axioms broken");
  return 0;
}

int cmd_ko(int n, const std::string& out) {
  KOSigns s = ko_signs(n);
  json j = {{"ko_dim", n}, {"eps", s.eps}, {"eps_prime", s.eps_prime}};
  j["eps_double_prime"] =
      s.eps_double_prime ? json(*s.eps_double_prime) : json(nullptr);
  emit(dump(j), out);
  return 0;
}

int cmd_product(const std::string& in1, const std::string& in2,
                const std::string& out) {
  auto a = io::triple_from_json(load_json(in1));
  auto b = io::triple_from_json(load_json(in2));
  emit(dump(io::triple_to_json(product_triple(a, b))), out);
  return 0;
}

int cmd_distance_riemannian(const std::string& in, int from, int to,
                            double tol, const std::string& format,
                            const std::string& out) {
  auto t = io::triple_from_json(load_json(in));
  auto cs = characters(t.algebra_basis);
  auto point = [&](int i) {
    if (i < 0 || i >= cs.count())
      throw OutOfRange("character index out of range");
    RVector w = RVector::Zero(cs.count());
    w[i] = 1.0;
    return state_from_weights(cs, w);
  };
  if (from >= 0 && to >= 0) {
    auto r = spectral_distance(t, point(from), point(to), tol);
    json j = {{"from", from},
              {"to", to},
              {"distance", number17(r.distance)},
              {"infinite", r.infinite}};
    emit(dump(j), out);
    return 0;
  }
  std::vector<StateFunctional> states;
  for (int i = 0; i < cs.count(); ++i) states.push_back(point(i));
  Eigen::MatrixXd d = distance_matrix(t, states, tol);
  if (format == "csv") {
    std::ostringstream os;
    os << "from,to,distance\n";
    for (int i = 0; i < d.rows(); ++i)
      for (int j = i + 1; j < d.cols(); ++j)
        os << i << "," << j << "," << fmt17(d(i, j)) << "\n";
    emit(os.str(), out);
  } else {
    json rows = json::array();
    for (int i = 0; i < d.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < d.cols(); ++j) row.push_back(number17(d(i, j)));
      rows.push_back(std::move(row));
    }
    emit(dump(json{{"distance_matrix", rows}}), out);
  }
  return 0;
}

int cmd_distance_lorentzian(const std::string& lattice, const std::string& from,
                            const std::string& to, const std::string& method,
                            int chains, unsigned seed,
                            const std::string& format, const std::string& out) {
  LatticeSpacetime m = io::lattice_from_json(load_json(lattice));
  Node p = parse_node(from), q = parse_node(to);

  std::optional<double> dp, var;
  if (method == "dp" || method == "both") dp = lorentz_distance_paths(m, p, q);
  if (method == "variational" || method == "both") {
    auto r = lorentz_distance_variational(m, p, q);
    if (r.status != SolveStatus::Optimal)
      throw SolverFailure("variational distance: cone program did not converge");
    var = r.distance;
  }

  // Optional property check: reverse triangle inequality d(p,r) >= d(p,q') +
  // d(q',r) on seeded random causal chains through the DP field.
  json chain_report;
  if (chains > 0) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> rt(0, m.nt - 1), rx(0, m.nx - 1);
    int violations = 0, tested = 0;
    double lattice_tol = 2.0 * (m.dt + m.dx);
    while (tested < chains) {
      Node a{rt(rng), rx(rng)}, b{rt(rng), rx(rng)}, c{rt(rng), rx(rng)};
      if (!(a.t < b.t && b.t < c.t)) continue;
      double dab = lorentz_distance_paths(m, a, b);
      double dbc = lorentz_distance_paths(m, b, c);
      if (dab <= 0.0 || dbc <= 0.0) continue;
      double dac = lorentz_distance_paths(m, a, c);
      ++tested;
      if (dac + lattice_tol < dab + dbc) ++violations;
    }
    chain_report = {{"tested", tested}, {"violations", violations}};
  }

  if (format == "csv") {
    std::ostringstream os;
    os << "from_t,from_x,to_t,to_x,method,distance\n";
    if (dp)
      os << p.t << "," << p.x << "," << q.t << "," << q.x << ",dp,"
         << fmt17(*dp) << "\n";
    if (var)
      os << p.t << "," << p.x << "," << q.t << "," << q.x << ",variational,"
         << fmt17(*var) << "\n";
    emit(os.str(), out);
  } else {
    json j = {{"from", {p.t, p.x}}, {"to", {q.t, q.x}}};
    if (dp) j["dp"] = number17(*dp);
    if (var) j["variational"] = number17(*var);
    if (!chain_report.is_null()) j["wrongway_chains"] = chain_report;
    emit(dump(j), out);
  }
  return 0;
}

int cmd_equality_witness(const std::string& lattice, const std::string& from,
                         const std::string& to, double eps, bool dump_f,
                         const std::string& out) {
  LatticeSpacetime m = io::lattice_from_json(load_json(lattice));
  Node p = parse_node(from), q = parse_node(to);
  WitnessResult r = equality_witness(m, p, q, eps);
  const char* rel = r.relation == CausalKind::Chronological ? "chronological"
                    : r.relation == CausalKind::NullCausal  ? "null_causal"
                                                            : "unrelated";
  json j = {{"relation", rel},
            {"gap", number17(r.gap)},
            {"f_q_minus_f_p", number17(r.f_q_minus_f_p)},
            {"eikonal_frac_ok", number17(r.eikonal.frac_ok)},
            {"eikonal_mean_residual", number17(r.eikonal.mean_residual)},
            {"eikonal_cells", r.eikonal.cells},
            {"boundary_flag", r.boundary_flag}};
  if (dump_f) j["f"] = io::rvector_to_json(r.f);
  emit(dump(j), out);
  return 0;
}

int cmd_dixmier(const std::string& in, const std::string& method,
                const std::string& format, const std::string& out) {
  json jin = load_json(in);
  std::vector<double> mu;
  const json& arr = jin.is_array() ? jin : jin.at("mu");
  for (const auto& v : arr) mu.push_back(v.get<double>());
  auto sp = profile_from_values(mu, int(mu.size()));

  if (format == "csv") {
    // Plot-ready table of the partial sums and their scalings.
    std::ostringstream os;
    os << "N,sigma_N,sigma_over_logN,tau_N\n";
    for (int n = 4; n <= int(mu.size()); n *= 2) {
      double s = sigma(sp, double(n));
      os << n << "," << fmt17(s) << "," << fmt17(s / std::log(double(n)))
         << "," << fmt17(cesaro_tau(sp, double(n))) << "\n";
    }
    emit(os.str(), out);
    return 0;
  }
  DixmierMethod dm = method == "raw"      ? DixmierMethod::Raw
                     : method == "cesaro" ? DixmierMethod::Cesaro
                                          : DixmierMethod::LogFit;
  auto est = dixmier_estimate(sp, dm);
  emit(dump(json{{"method", method},
                 {"value", number17(est.value)},
                 {"uncertainty", number17(est.uncertainty)}}),
       out);
  return 0;
}

int cmd_nc_integral(int cutoff, const std::vector<double>& cos_coef,
                    const std::string& out) {
  if (cutoff < 8) throw OutOfRange("nc-integral: cutoff >= 8 required");
  if (cos_coef.empty()) throw DomainError("nc-integral: need coefficients");
  // cos_coef = (c0, c1, ...) means f(theta) = c0 + sum_j c_j cos(j theta).
  int deg = int(cos_coef.size()) - 1;
  std::vector<cdouble> coef(size_t(2 * deg + 1), 0.0);
  coef[size_t(deg)] = cos_coef[0];
  for (int j = 1; j <= deg; ++j)
    coef[size_t(deg + j)] = coef[size_t(deg - j)] = 0.5 * cos_coef[size_t(j)];
  TruncatedCircleTriple tc{cutoff};
  auto r = nc_integral_check_circle(tc, coef, deg);
  emit(dump(json{{"lhs", number17(r.lhs)},
                 {"rhs", number17(r.rhs)},
                 {"rel_error", number17(r.rel_error)}}),
       out);
  return 0;
}

int cmd_signature(int cutoff, int q, double f_mean, int extra,
                  const std::string& out) {
  if (q != 0 && q != 1) throw OutOfRange("signature: q must be 0 or 1");
  auto r = signature_check(cutoff, f_mean, q == 1, q, extra);
  emit(dump(json{{"cutoff", cutoff},
                 {"q", q},
                 {"lhs", number17(r.lhs)},
                 {"rhs", number17(r.rhs)}}),
       out);
  return 0;
}

int cmd_temporal_validate(const std::string& in, double tol,
                          const std::string& out) {
  auto t = io::temporal_from_json(load_json(in));
  auto rep = validate_temporal(t, tol);
  emit(dump(report_to_json(rep)), out);
  if (!rep.all_pass()) throw ValidationFailed("temporal triple axioms broken");
  return 0;
}

int cmd_order_reconstruct(const std::string& lattice, const std::string& cone,
                          int n, const std::string& out) {
  if (!lattice.empty()) {
    // Build the light-cone coordinate generators plus T on the lattice and
    // compare the induced order with longest-path reachability.
    LatticeSpacetime m = io::lattice_from_json(load_json(lattice));
    FunctionCone fc;
    RVector u(m.size()), v(m.size()), tc(m.size());
    for (int t = 0; t < m.nt; ++t)
      for (int x = 0; x < m.nx; ++x) {
        double tt = t * m.dt, xx = x * m.dx;
        u[m.node(t, x)] = tt + xx;
        v[m.node(t, x)] = tt - xx;
        tc[m.node(t, x)] = tt;
      }
    fc.generators = {u, v, tc};
    FinitePoset p = order_from_cone(m.size(), fc);
    int mismatches = 0;
    for (int t = 0; t < m.nt; ++t)
      for (int x = 0; x < m.nx; ++x) {
        RVector field = lorentz_distance_field_from(m, Node{t, x});
        int src = m.node(t, x);
        for (int jn = 0; jn < p.n; ++jn)
          if (p.leq[size_t(src)][size_t(jn)] != std::isfinite(field[jn]))
            ++mismatches;
      }
    json j = {{"n", p.n},
              {"mismatches", mismatches},
              {"match", mismatches == 0},
              {"poset", io::poset_to_json(p)}};
    emit(dump(j), out);
    if (mismatches > 0)
      throw ValidationFailed("cone order does not match lattice reachability");
    return 0;
  }
  if (cone.empty() || n <= 0)
    throw DomainError("order-reconstruct: need --lattice, or --cone with --n");
  FunctionCone fc = io::cone_from_json(load_json(cone));
  FinitePoset p = order_from_cone(n, fc);
  emit(dump(io::poset_to_json(p)), out);
  return 0;
}

int cmd_junk(const std::string& in, int p, const std::string& out) {
  auto t = io::triple_from_json(load_json(in));
  auto words = default_generator_words(t, p);
  auto junk = junk_subspace(t, p, words);
  emit(dump(json{{"p", p},
                 {"hilbert_dim", t.hilbert_dim},
                 {"junk_dim", int(junk.size())}}),
       out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectre: finite spectral geometry toolkit"};
  app.require_subcommand(1);

  std::string in, in2, lattice, cone_path, from, to, out, format = "json";
  std::string method = "log_fit", lmethod = "both";
  double tol = 1e-8, eps = 0.05, f_mean = 1.0;
  int n = 0, p_degree = 1, cutoff = 60, q = 1, extra = 1, chains = 0;
  int from_idx = -1, to_idx = -1;
  unsigned seed = 0;
  bool dump_f = false;
  std::vector<double> cos_coef;

  auto* v = app.add_subcommand("validate", "check spectral triple axioms");
  v->add_option("--in", in)->required();
  v->add_option("--tol", tol);
  v->add_option("--out", out);

  auto* k = app.add_subcommand("ko", "KO-dimension sign table row");
  k->add_option("--n", n)->required();
  k->add_option("--out", out);

  auto* pr = app.add_subcommand("product", "product of two spectral triples");
  pr->add_option("--in1", in)->required();
  pr->add_option("--in2", in2)->required();
  pr->add_option("--out", out);

  auto* dr = app.add_subcommand("distance-riemannian",
                                "spectral distance between pure states");
  dr->add_option("--in", in)->required();
  dr->add_option("--from", from_idx);
  dr->add_option("--to", to_idx);
  dr->add_option("--tol", tol);
  dr->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  dr->add_option("--out", out);

  auto* dl = app.add_subcommand("distance-lorentzian",
                                "lattice Lorentzian distance");
  dl->add_option("--lattice", lattice)->required();
  dl->add_option("--from", from)->required();
  dl->add_option("--to", to)->required();
  dl->add_option("--method", lmethod)
      ->check(CLI::IsMember({"dp", "variational", "both"}));
  dl->add_option("--chains", chains);
  dl->add_option("--seed", seed);
  dl->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  dl->add_option("--out", out);

  auto* ew = app.add_subcommand("equality-witness",
                                "steep function witnessing the distance");
  ew->add_option("--lattice", lattice)->required();
  ew->add_option("--from", from)->required();
  ew->add_option("--to", to)->required();
  ew->add_option("--eps", eps);
  ew->add_flag("--dump-f", dump_f);
  ew->add_option("--out", out);

  auto* dx = app.add_subcommand("dixmier", "Dixmier trace estimators");
  dx->add_option("--profile", in)->required();
  dx->add_option("--method", method)
      ->check(CLI::IsMember({"raw", "cesaro", "log_fit"}));
  dx->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  dx->add_option("--out", out);

  auto* nc = app.add_subcommand("nc-integral",
                                "noncommutative integral check on the circle");
  nc->add_option("--cutoff", cutoff);
  nc->add_option("--coef", cos_coef)->required();
  nc->add_option("--out", out);

  auto* sg = app.add_subcommand("signature", "signature formula comparison");
  sg->add_option("--cutoff", cutoff);
  sg->add_option("--q", q);
  sg->add_option("--f-mean", f_mean);
  sg->add_option("--extra", extra);
  sg->add_option("--out", out);

  auto* tv = app.add_subcommand("temporal-validate",
                                "check temporal triple axioms");
  tv->add_option("--in", in)->required();
  tv->add_option("--tol", tol);
  tv->add_option("--out", out);

  auto* orc = app.add_subcommand("order-reconstruct",
                                 "causal order from a function cone");
  orc->add_option("--lattice", lattice);
  orc->add_option("--cone", cone_path);
  orc->add_option("--n", n);
  orc->add_option("--out", out);

  auto* jk = app.add_subcommand("junk", "junk forms dimension");
  jk->add_option("--in", in)->required();
  jk->add_option("--p", p_degree);
  jk->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    nlohmann::json err = {
        {"error", {{"code", 2}, {"kind", "usage"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  }

  try {
    if (*v) return cmd_validate(in, tol, out);
    if (*k) return cmd_ko(n, out);
    if (*pr) return cmd_product(in, in2, out);
    if (*dr) return cmd_distance_riemannian(in, from_idx, to_idx, tol, format, out);
    if (*dl)
      return cmd_distance_lorentzian(lattice, from, to, lmethod, chains, seed,
                                     format, out);
    if (*ew) return cmd_equality_witness(lattice, from, to, eps, dump_f, out);
    if (*dx) return cmd_dixmier(in, method, format, out);
    if (*nc) return cmd_nc_integral(cutoff, cos_coef, out);
    if (*sg) return cmd_signature(cutoff, q, f_mean, extra, out);
    if (*tv) return cmd_temporal_validate(in, tol, out);
    if (*orc) return cmd_order_reconstruct(lattice, cone_path, n, out);
    if (*jk) return cmd_junk(in, p_degree, out);
  } catch (const ValidationFailed& e) {
    nlohmann::json err = {
        {"error", {{"code", 1}, {"kind", "validation"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const json::parse_error& e) {
    nlohmann::json err = {{"error",
                           {{"code", 2},
                            {"kind", "parse"},
                            {"message", e.what()},
                            {"byte", e.byte}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const SolverFailure& e) {
    nlohmann::json err = {
        {"error", {{"code", 3}, {"kind", "solver"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    nlohmann::json err = {
        {"error", {{"code", 2}, {"kind", "input"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
