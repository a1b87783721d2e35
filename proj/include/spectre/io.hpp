#pragma once
// JSON (de)serialization for the library's fixture formats, shared by the
// command-line tool and the tests.  Complex entries are [re, im] pairs.

#include "spectre/causal_order.hpp"
#include "spectre/krein.hpp"
#include "spectre/lorentzian.hpp"
#include "spectre/spectral_triple.hpp"

#include <json.hpp>

#include <cstdio>
#include <string>

namespace spectre::io {

using nlohmann::json;

// 17 significant digits: lossless double round-trip in decimal.
inline std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline json complex_to_json(cdouble z) {
  return json::array({z.real(), z.imag()});
}

inline cdouble complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw DomainError("complex entry must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json operator_to_json(const Operator& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      row.push_back(complex_to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Operator operator_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw DomainError("matrix must be a non-empty array of rows");
  const Eigen::Index rows = Eigen::Index(j.size());
  const Eigen::Index cols = Eigen::Index(j[0].size());
  Operator a(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (Eigen::Index(j[size_t(r)].size()) != cols)
      throw DomainError("matrix rows have inconsistent lengths");
    for (Eigen::Index c = 0; c < cols; ++c)
      a(r, c) = complex_from_json(j[size_t(r)][size_t(c)]);
  }
  return a;
}

inline json rvector_to_json(const RVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

inline RVector rvector_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("vector must be an array of numbers");
  RVector v(Eigen::Index(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = j[size_t(i)].get<double>();
  return v;
}

// --------------------------------------------------------------------------
// Spectral triples: {"hilbert_dim", "dirac", "algebra_basis",
//                    "grading"?, "real"?: {"j_matrix", "ko_dim"}}.

inline json triple_to_json(const FiniteSpectralTriple& t) {
  json j;
  j["hilbert_dim"] = t.hilbert_dim;
  j["dirac"] = operator_to_json(t.dirac);
  j["algebra_basis"] = json::array();
  for (const auto& a : t.algebra_basis)
    j["algebra_basis"].push_back(operator_to_json(a));
  if (t.grading) j["grading"] = operator_to_json(*t.grading);
  if (t.real_structure)
    j["real"] = {{"j_matrix", operator_to_json(t.real_structure->c)},
                 {"ko_dim", t.real_structure->ko_dim}};
  return j;
}

inline FiniteSpectralTriple triple_from_json(const json& j) {
  FiniteSpectralTriple t;
  t.hilbert_dim = j.at("hilbert_dim").get<int>();
  t.dirac = operator_from_json(j.at("dirac"));
  for (const auto& a : j.at("algebra_basis"))
    t.algebra_basis.push_back(operator_from_json(a));
  if (j.contains("grading")) t.grading = operator_from_json(j["grading"]);
  if (j.contains("real"))
    t.real_structure =
        RealStructure{operator_from_json(j["real"].at("j_matrix")),
                      j["real"].at("ko_dim").get<int>()};
  if (j.contains("unital")) t.unital = j["unital"].get<bool>();
  return t;
}

// Temporal triple = spectral triple + "time_operator".
inline json temporal_to_json(const TemporalTriple& t) {
  json j = triple_to_json(t.base);
  j["time_operator"] = operator_to_json(t.time);
  return j;
}

inline TemporalTriple temporal_from_json(const json& j) {
  TemporalTriple t;
  t.base = triple_from_json(j);
  t.time = operator_from_json(j.at("time_operator"));
  return t;
}

// --------------------------------------------------------------------------
// Lattice spacetimes: {"nt","nx","dt","dx","lapse":[...],"scale":[...],
//                      "topology": "interval"|"periodic"}.

inline json lattice_to_json(const LatticeSpacetime& m) {
  json j;
  j["nt"] = m.nt;
  j["nx"] = m.nx;
  j["dt"] = m.dt;
  j["dx"] = m.dx;
  j["lapse"] = rvector_to_json(m.lapse);
  j["scale"] = rvector_to_json(m.scale);
  j["topology"] = m.topology == Topology::Periodic ? "periodic" : "interval";
  return j;
}

inline LatticeSpacetime lattice_from_json(const json& j) {
  LatticeSpacetime m;
  m.nt = j.at("nt").get<int>();
  m.nx = j.at("nx").get<int>();
  m.dt = j.at("dt").get<double>();
  m.dx = j.at("dx").get<double>();
  m.lapse = rvector_from_json(j.at("lapse"));
  m.scale = rvector_from_json(j.at("scale"));
  std::string topo = j.value("topology", "interval");
  if (topo == "periodic") m.topology = Topology::Periodic;
  else if (topo == "interval") m.topology = Topology::Interval;
  else throw DomainError("topology must be 'interval' or 'periodic'");
  return m;
}

// --------------------------------------------------------------------------
// Posets {"n","leq":[[0/1,...],...]} and function cones (list of vectors).

inline json poset_to_json(const FinitePoset& p) {
  json rows = json::array();
  for (const auto& row : p.leq) {
    json r = json::array();
    for (bool b : row) r.push_back(b ? 1 : 0);
    rows.push_back(std::move(r));
  }
  return {{"n", p.n}, {"leq", rows}};
}

inline FinitePoset poset_from_json(const json& j) {
  FinitePoset p;
  p.n = j.at("n").get<int>();
  for (const auto& row : j.at("leq")) {
    std::vector<bool> r;
    for (const auto& e : row) r.push_back(e.get<int>() != 0);
    p.leq.push_back(std::move(r));
  }
  check_poset(p);
  return p;
}

inline json cone_to_json(const FunctionCone& c) {
  json gens = json::array();
  for (const auto& g : c.generators) gens.push_back(rvector_to_json(g));
  return {{"generators", gens}, {"includes_constants", c.includes_constants}};
}

inline FunctionCone cone_from_json(const json& j) {
  FunctionCone c;
  if (j.is_array()) {  // bare list of vectors
    for (const auto& g : j) c.generators.push_back(rvector_from_json(g));
    return c;
  }
  for (const auto& g : j.at("generators"))
    c.generators.push_back(rvector_from_json(g));
  c.includes_constants = j.value("includes_constants", true);
  return c;
}

}  // namespace spectre::io
