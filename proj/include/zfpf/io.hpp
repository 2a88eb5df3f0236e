// Copyright 2026 The zfpf Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ZFPF_IO_HPP
#define ZFPF_IO_HPP

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "zfpf/csp.hpp"
#include "zfpf/errors.hpp"
#include "zfpf/quantum.hpp"
#include "zfpf/series.hpp"

// JSON (de)serialization. Complex numbers are always [re, im] pairs.
namespace zfpf::io {

using json = nlohmann::json;

inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann's message already carries "line L, column C".
    throw InputError(source + ": " + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

namespace detail {

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(where + ": field \"" + key + "\" has the wrong type (" + e.what() + ")");
  }
}

inline std::size_t count_field(const json& j, const char* key, const std::string& where) {
  const auto& v = j.contains(key) ? j.at(key) : json();
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError(where + ": field \"" + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

inline VertexSet index_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + " must be an array of integers");
  VertexSet out;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 0)
      throw InputError(where + " must contain non-negative integers");
    out.push_back(x.get<Vertex>());
  }
  return out;
}

}  // namespace detail

inline cplx parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError(where + ": complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline std::vector<cplx> parse_complex_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + " must be an array of [re, im] pairs");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

/// Square matrix from a flat row-major list of dim*dim pairs.
inline Matrix parse_matrix(const json& j, std::size_t dim, const std::string& where) {
  const auto flat = parse_complex_list(j, where);
  if (flat.size() != dim * dim)
    throw InputError(where + ": expected " + std::to_string(dim * dim) + " entries, got " + std::to_string(flat.size()));
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = flat[static_cast<std::size_t>(r * n + c)];
  return m;
}

inline json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(to_json(m(r, c)));
  return out;
}

inline Hamiltonian parse_hamiltonian(const json& j) {
  const std::string where = "hamiltonian";
  if (!j.is_object()) throw InputError(where + ": expected an object");
  Hamiltonian h;
  h.q = detail::count_field(j, "q", where);
  h.n_sites = detail::count_field(j, "n_sites", where);
  h.k = detail::count_field(j, "k", where);
  h.d = detail::count_field(j, "d", where);
  if (h.q < 2) throw InputError(where + ": q must be at least 2");
  const json terms = j.contains("terms") ? j.at("terms") : json::array();
  if (!terms.is_array()) throw InputError(where + ": \"terms\" must be an array");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string tw = where + ".terms[" + std::to_string(t) + "]";
    if (!terms[t].is_object() || !terms[t].contains("support") || !terms[t].contains("matrix"))
      throw InputError(tw + ": needs \"support\" and \"matrix\"");
    LocalTerm term;
    term.support = detail::index_list(terms[t]["support"], tw + ".support");
    if (term.support.size() > 12) throw InputError(tw + ": support too large");
    term.matrix = parse_matrix(terms[t]["matrix"], ipow(h.q, term.support.size()), tw + ".matrix");
    h.terms.push_back(std::move(term));
  }
  validate(h);
  return h;
}

inline json to_json(const Hamiltonian& h) {
  json terms = json::array();
  for (const auto& t : h.terms) terms.push_back({{"support", t.support}, {"matrix", matrix_to_json(t.matrix)}});
  return {{"q", h.q}, {"n_sites", h.n_sites}, {"k", h.k}, {"d", h.d}, {"terms", terms}};
}

inline TensorizedMeasurement parse_measurement(const json& j, std::size_t n_sites, std::size_t q) {
  const std::string where = "measurement";
  if (!j.is_object()) throw InputError(where + ": expected an object");
  if (j.contains("identity")) {
    if (j.at("identity") != true) throw InputError(where + ": \"identity\" must be true when present");
    return TensorizedMeasurement::identity();
  }
  if (!j.contains("sites") || !j.at("sites").is_array())
    throw InputError(where + ": expected {\"identity\": true} or {\"sites\": [...]}");
  std::vector<Matrix> sites;
  for (std::size_t v = 0; v < j.at("sites").size(); ++v)
    sites.push_back(parse_matrix(j.at("sites")[v], q, where + ".sites[" + std::to_string(v) + "]"));
  TensorizedMeasurement o(std::move(sites));
  o.validate(n_sites, q);
  return o;
}

inline CspFormula parse_csp(const json& j) {
  const std::string where = "csp";
  if (!j.is_object()) throw InputError(where + ": expected an object");
  CspFormula f;
  f.n_vars = detail::count_field(j, "n_vars", where);
  f.k = detail::count_field(j, "k", where);
  f.d = detail::count_field(j, "d", where);
  const json clauses = j.contains("clauses") ? j.at("clauses") : json::array();
  if (!clauses.is_array()) throw InputError(where + ": \"clauses\" must be an array");
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const std::string cw = where + ".clauses[" + std::to_string(c) + "]";
    if (!clauses[c].is_object() || !clauses[c].contains("vars") || !clauses[c].contains("table"))
      throw InputError(cw + ": needs \"vars\" and \"table\"");
    Clause cl;
    cl.vars = detail::index_list(clauses[c]["vars"], cw + ".vars");
    cl.table = parse_complex_list(clauses[c]["table"], cw + ".table");
    f.clauses.push_back(std::move(cl));
  }
  validate(f);
  return f;
}

inline json series_to_json(const TaylorSeries& s) {
  json coeffs = json::array();
  for (std::size_t i = 0; i <= s.order(); ++i) coeffs.push_back(to_json(s[i]));
  return {{"order", s.order()}, {"coefficients", coeffs}};
}

}  // namespace zfpf::io

#endif  // ZFPF_IO_HPP
