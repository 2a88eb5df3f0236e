// Copyright 2026 The zfpf Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ZFPF_CSP_HPP
#define ZFPF_CSP_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "zfpf/errors.hpp"
#include "zfpf/family.hpp"
#include "zfpf/graph.hpp"
#include "zfpf/interpolate.hpp"
#include "zfpf/series.hpp"

namespace zfpf {

/// phi_e over the variables `vars` (sorted); `table` is indexed by the 0/1
/// assignment read as a binary number with vars[0] most significant.
struct Clause {
  VertexSet vars;
  std::vector<cplx> table;
};

/// Boolean CSP with external field: Z(lambda) = sum_sigma prod_e phi_e(sigma|_e) lambda^{|sigma|}.
struct CspFormula {
  std::size_t n_vars = 0;
  std::size_t k = 1;
  std::size_t d = 1;
  std::vector<Clause> clauses;
};

inline void validate(const CspFormula& f) {
  std::vector<std::size_t> degree(f.n_vars, 0);
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    const auto& cl = f.clauses[c];
    const std::string where = "clause " + std::to_string(c) + ": ";
    if (cl.vars.empty()) throw InputError(where + "no variables");
    if (cl.vars.size() > f.k) throw InputError(where + "arity exceeds k");
    if (cl.vars.size() >= 8 * sizeof(std::size_t) - 1) throw InputError(where + "arity too large");
    for (std::size_t i = 0; i < cl.vars.size(); ++i) {
      if (cl.vars[i] >= f.n_vars) throw InputError(where + "variable out of range");
      if (i > 0 && cl.vars[i - 1] >= cl.vars[i]) throw InputError(where + "variables must be sorted and distinct");
      ++degree[cl.vars[i]];
    }
    if (cl.table.size() != (std::size_t{1} << cl.vars.size()))
      throw InputError(where + "table length must be 2^arity");
    if (std::abs(cl.table[0] - cplx(1.0)) > 1e-12)
      throw InputError(where + "value at the all-zeros assignment must be 1 (fold it into a global constant)");
  }
  for (std::size_t v = 0; v < f.n_vars; ++v)
    if (degree[v] > f.d) throw InputError("variable " + std::to_string(v) + " occurs in more than d clauses");
}

/// One vertex per variable; co-occurring variables are adjacent. A vertex's
/// label is the sorted multiset of (clause table, its position in the clause).
inline DependencyGraph to_dependency_graph(const CspFormula& f) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::vector<std::string>> parts(f.n_vars);
  for (const auto& cl : f.clauses) {
    for (std::size_t a = 0; a < cl.vars.size(); ++a) {
      for (std::size_t b = a + 1; b < cl.vars.size(); ++b) edges.emplace_back(cl.vars[a], cl.vars[b]);
      std::string bytes;
      const auto put = [&bytes](const void* p, std::size_t n) { bytes.append(static_cast<const char*>(p), n); };
      const std::uint64_t pos = a, len = cl.table.size();
      put(&pos, sizeof pos);
      put(&len, sizeof len);
      for (const cplx& v : cl.table) {
        const double re = v.real(), im = v.imag();
        put(&re, sizeof re);
        put(&im, sizeof im);
      }
      parts.at(cl.vars[a]).push_back(std::move(bytes));
    }
  }
  std::vector<VertexLabel> labels(f.n_vars);
  for (std::size_t v = 0; v < f.n_vars; ++v) {
    std::sort(parts[v].begin(), parts[v].end());
    for (auto& p : parts[v]) labels[v].bytes += p;
  }
  return DependencyGraph(f.n_vars, edges, std::move(labels));
}

/// lambda_{G[U],l}: zero unless |U| = l, else the product over clauses
/// touching U of phi_e at the indicator of U (variables outside U read 0).
inline cplx csp_lambda(const CspFormula& f, std::span<const Vertex> u, std::size_t l) {
  if (u.empty() || u.size() != l) return {};
  cplx prod(1.0);
  for (const auto& cl : f.clauses) {
    std::size_t index = 0;
    bool touches = false;
    for (Vertex v : cl.vars) {
      const bool in = std::binary_search(u.begin(), u.end(), v);
      touches |= in;
      index = index * 2 + (in ? 1 : 0);
    }
    if (touches) prod *= cl.table[index];
  }
  return prod;
}

/// The (1,1)-bounded family of a Boolean CSP over its variable graph.
class CspFamily {
 public:
  explicit CspFamily(const CspFormula& f) : f_(f), clauses_of_(f.n_vars) {
    for (std::size_t c = 0; c < f.clauses.size(); ++c)
      for (Vertex v : f.clauses[c].vars) clauses_of_.at(v).push_back(c);
  }

  std::size_t alpha() const noexcept { return 1; }
  double f0(const DependencyGraph&) const noexcept { return 1.0; }

  TaylorSeries lambda_series(const DependencyGraph&, std::span<const Vertex> u, std::size_t m) const {
    TaylorSeries out(m);
    if (u.empty() || u.size() > m) return out;
    std::vector<std::size_t> touched;
    for (Vertex v : u) touched.insert(touched.end(), clauses_of_[v].begin(), clauses_of_[v].end());
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    cplx prod(1.0);
    for (std::size_t c : touched) {
      const auto& cl = f_.clauses[c];
      std::size_t index = 0;
      for (Vertex v : cl.vars) index = index * 2 + (std::binary_search(u.begin(), u.end(), v) ? 1 : 0);
      prod *= cl.table[index];
    }
    out[u.size()] = prod;
    return out;
  }

 private:
  const CspFormula& f_;
  std::vector<std::vector<std::size_t>> clauses_of_;
};

/// Z_Phi(lambda_field) on a region where |log Z_Phi| <= M.
inline EstimateReport estimate_csp(const CspFormula& f, const GoodRegion& region, cplx lambda_field, double eps,
                                   double delta, double M, EngineOptions options = {}) {
  validate(f);
  const DependencyGraph g = to_dependency_graph(f);
  const CspFamily family(f);
  return estimate(family, g, region, lambda_field, eps, M, delta, options);
}

}  // namespace zfpf

#endif  // ZFPF_CSP_HPP
