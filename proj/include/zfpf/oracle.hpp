// Copyright 2026 The zfpf Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ZFPF_ORACLE_HPP
#define ZFPF_ORACLE_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>
#include <vector>

#include "zfpf/csp.hpp"
#include "zfpf/errors.hpp"
#include "zfpf/quantum.hpp"
#include "zfpf/series.hpp"

// Exact, exponential-cost reference evaluations used to check the pipeline.
namespace zfpf::oracle {

inline constexpr std::size_t kDefaultStateCap = std::size_t{1} << 12;

namespace detail {

inline VertexSet all_sites(std::size_t n) {
  VertexSet s(n);
  for (std::size_t v = 0; v < n; ++v) s[v] = static_cast<Vertex>(v);
  return s;
}

inline void check_cap(const Hamiltonian& h, std::size_t cap) {
  const double bits = static_cast<double>(h.n_sites) * std::log2(static_cast<double>(h.q));
  if (bits > std::log2(static_cast<double>(cap)) + 1e-9)
    throw CapabilityError("oracle: q^n = " + std::to_string(h.q) + "^" + std::to_string(h.n_sites) +
                          " exceeds the state cap " + std::to_string(cap));
}

struct Spectrum {
  Eigen::VectorXd values;
  Matrix vectors;
};

inline Spectrum diagonalize(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) throw NumericError("oracle: eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace detail

/// Dense sum of all terms on the full q^n space (site 0 most significant).
inline Matrix assemble(const Hamiltonian& h, std::size_t cap = kDefaultStateCap) {
  validate(h);
  detail::check_cap(h, cap);
  const VertexSet sites = detail::all_sites(h.n_sites);
  const auto dim = static_cast<Eigen::Index>(ipow(h.q, h.n_sites));
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& t : h.terms) out += Matrix(embed(t, sites, h.q));
  return out;
}

/// Tr[exp(-beta H) O] via the Hermitian eigendecomposition H = V diag(w) V^dagger.
inline cplx exact_partition(const Hamiltonian& h, const TensorizedMeasurement& o, cplx beta,
                            std::size_t cap = kDefaultStateCap) {
  o.validate(h.n_sites, h.q);
  const auto spec = detail::diagonalize(assemble(h, cap));
  const Matrix od = measurement_on(o, detail::all_sites(h.n_sites), h.q);
  const Matrix rotated = spec.vectors.adjoint() * od * spec.vectors;
  cplx z{};
  for (Eigen::Index i = 0; i < spec.values.size(); ++i) z += std::exp(-beta * spec.values(i)) * rotated(i, i);
  return z;
}

/// f_l = (-1)^l Tr[H^l O] / (l! Tr O), l = 0..m.
inline TaylorSeries exact_f_series(const Hamiltonian& h, const TensorizedMeasurement& o, std::size_t m,
                                   std::size_t cap = kDefaultStateCap) {
  o.validate(h.n_sites, h.q);
  const Matrix hd = assemble(h, cap);
  const VertexSet sites = detail::all_sites(h.n_sites);
  const Matrix od = measurement_on(o, sites, h.q);
  const double tr = o.trace(sites, h.q);
  TaylorSeries f(m);
  Matrix power = Matrix::Identity(hd.rows(), hd.cols());
  f[0] = 1.0;
  for (std::size_t l = 1; l <= m; ++l) {
    power = (hd * power) * cplx(-1.0 / static_cast<double>(l));
    f[l] = (power * od).trace() / tr;
  }
  return f;
}

/// mu(sigma) = <sigma| exp(-beta H) |sigma> / Z for real beta, indexed like the basis.
inline std::vector<double> exact_gibbs_distribution(const Hamiltonian& h, double beta,
                                                    std::size_t cap = kDefaultStateCap) {
  const auto spec = detail::diagonalize(assemble(h, cap));
  const Eigen::Index dim = spec.values.size();
  // Shift by the smallest eigenvalue so the largest weight is 1.
  const double shift = dim > 0 ? (beta >= 0 ? spec.values.minCoeff() : spec.values.maxCoeff()) : 0.0;
  std::vector<double> p(static_cast<std::size_t>(dim), 0.0);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double w = std::exp(-beta * (spec.values(i) - shift));
    for (Eigen::Index a = 0; a < dim; ++a) p[static_cast<std::size_t>(a)] += w * std::norm(spec.vectors(a, i));
  }
  double total = 0.0;
  for (double& x : p) {
    if (x < -1e-12) throw NumericError("oracle: negative Gibbs weight");
    x = std::max(x, 0.0);
    total += x;
  }
  for (double& x : p) x /= total;
  return p;
}

/// Tr[exp(A)] for an arbitrary (not necessarily Hermitian) square matrix.
inline cplx trace_exp(const Matrix& a) {
  if (a.rows() != a.cols()) throw InputError("trace_exp: matrix must be square");
  if (static_cast<std::size_t>(a.rows()) > kDefaultStateCap) throw CapabilityError("trace_exp: matrix too large");
  const Matrix e = a.exp();
  return e.trace();
}

/// Z_Phi(lambda) by enumerating all 2^n assignments.
inline cplx exact_csp_partition(const CspFormula& f, cplx lambda, std::size_t max_vars = 20) {
  validate(f);
  if (f.n_vars > max_vars) throw CapabilityError("oracle: CSP has more than " + std::to_string(max_vars) + " variables");
  cplx z{};
  const std::size_t n = f.n_vars;
  for (std::size_t sigma = 0; sigma < (std::size_t{1} << n); ++sigma) {
    cplx w(1.0);
    for (const auto& cl : f.clauses) {
      std::size_t index = 0;
      for (Vertex v : cl.vars) index = index * 2 + (sigma >> v & 1u);
      w *= cl.table[index];
      if (w == cplx{}) break;
    }
    if (w == cplx{}) continue;
    z += w * std::pow(lambda, static_cast<int>(__builtin_popcountll(sigma)));
  }
  return z;
}

}  // namespace zfpf::oracle

#endif  // ZFPF_ORACLE_HPP
