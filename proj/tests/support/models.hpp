// Copyright 2026 The zfpf Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// Instance generators shared by the unit tests and the acceptance runner.

#ifndef ZFPF_TESTS_SUPPORT_MODELS_HPP
#define ZFPF_TESTS_SUPPORT_MODELS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "zfpf/zfpf.hpp"

namespace zfpf::testing {

inline Matrix pauli_z() {
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

inline Matrix pauli_x() {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  return x;
}

inline Hamiltonian single_site(const Matrix& m) {
  Hamiltonian h;
  h.n_sites = 1;
  h.q = static_cast<std::size_t>(m.rows());
  h.k = 1;
  h.d = 1;
  h.terms.push_back({{0}, m});
  return h;
}

/// Random Hermitian matrix of dimension dim with spectral norm `norm`.
template <class Rng>
Matrix random_hermitian(std::size_t dim, double norm, Rng& rng) {
  std::normal_distribution<double> gauss;
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = cplx(gauss(rng), gauss(rng));
  Matrix h = (a + a.adjoint()) * 0.5;
  return h * (norm / spectral_norm(h));
}

/// Random (2,2)-Hamiltonian on n qubits with term norms in [0.3, 1]: a chain
/// of two-site terms with random gaps, padded with one-site terms wherever a
/// site still has degree budget.
template <class Rng>
Hamiltonian random_k2d2(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Hamiltonian h;
  h.n_sites = n;
  h.q = 2;
  h.k = 2;
  h.d = 2;
  std::vector<std::size_t> degree(n, 0);
  const auto add = [&](VertexSet support) {
    for (Vertex v : support) ++degree[v];
    const double norm = 0.3 + 0.7 * unit(rng);
    h.terms.push_back({support, random_hermitian(std::size_t{1} << support.size(), norm, rng)});
  };
  for (Vertex v = 0; v + 1 < n; ++v)
    if (unit(rng) < 0.8) add({v, v + 1});
  for (Vertex v = 0; v < n; ++v)
    if (degree[v] < 2 && unit(rng) < 0.6) add({v});
  if (h.terms.empty()) add({0});
  return h;
}

/// Hardcore model: one clause phi(11) = 0 per edge.
inline CspFormula hardcore(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  CspFormula f;
  f.n_vars = n;
  f.k = 2;
  std::vector<std::size_t> degree(n, 0);
  for (auto [u, v] : edges) {
    f.clauses.push_back({{std::min(u, v), std::max(u, v)}, {1.0, 1.0, 1.0, 0.0}});
    ++degree[u];
    ++degree[v];
  }
  f.d = std::max<std::size_t>(1, n ? *std::max_element(degree.begin(), degree.end()) : 1);
  return f;
}

inline CspFormula hardcore_path(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return hardcore(n, edges);
}

/// Random simple graph on n vertices with maximum degree <= max_degree.
template <class Rng>
std::vector<std::pair<Vertex, Vertex>> random_bounded_edges(std::size_t n, std::size_t max_degree, double p,
                                                            Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<Vertex, Vertex>> pairs, edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  std::vector<std::size_t> degree(n, 0);
  for (auto [u, v] : pairs) {
    if (degree[u] >= max_degree || degree[v] >= max_degree || unit(rng) >= p) continue;
    edges.emplace_back(u, v);
    ++degree[u];
    ++degree[v];
  }
  return edges;
}

/// Random graph with max degree <= max_degree built from about n*max_degree/2
/// random pairings (a sparse, roughly regular graph).
template <class Rng>
std::vector<std::pair<Vertex, Vertex>> random_sparse_edges(std::size_t n, std::size_t max_degree, Rng& rng) {
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  std::vector<std::size_t> degree(n, 0);
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  for (std::size_t attempt = 0; attempt < 4 * n * max_degree; ++attempt) {
    Vertex u = pick(rng), v = pick(rng);
    if (u == v || seen[u][v] || degree[u] >= max_degree || degree[v] >= max_degree) continue;
    seen[u][v] = seen[v][u] = true;
    ++degree[u];
    ++degree[v];
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return edges;
}

/// Graph on n vertices whose edges are the set bits of `code` over the pairs
/// (0,1), (0,2), ..., (n-2,n-1).
inline DependencyGraph graph_from_code(std::size_t n, std::uint64_t code) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++bit)
      if (code >> bit & 1u) edges.emplace_back(u, v);
  return DependencyGraph(n, edges);
}

/// Multiplicative family with random lambda series on connected subsets.
/// For connected S, lambda_{S,l} is random for l >= ceil(|S|/alpha) and zero
/// below; for disconnected S it is the product of the component series, so
/// f_G factorizes over components as the framework requires.
class SyntheticFamily {
 public:
  SyntheticFamily(std::size_t alpha, std::uint64_t seed) : alpha_(alpha), seed_(seed) {}

  std::size_t alpha() const noexcept { return alpha_; }
  double f0(const DependencyGraph&) const noexcept { return 1.0; }

  TaylorSeries lambda_series(const DependencyGraph& g, std::span<const Vertex> s, std::size_t m) const {
    TaylorSeries out(m);
    if (s.empty()) return out;
    const DependencyGraph sub = induced_subgraph(g, s);
    const auto parts = components(sub);
    bool first = true;
    for (const auto& part : parts) {
      VertexSet global;
      for (Vertex i : part) global.push_back(s[i]);
      TaylorSeries piece = connected_series(global, m);
      out = first ? piece : series_multiply(out, piece, m);
      first = false;
    }
    return out;
  }

 private:
  TaylorSeries connected_series(const VertexSet& s, std::size_t m) const {
    std::uint64_t key = seed_;
    for (Vertex v : s) key = key * 1000003u + v + 1;
    std::mt19937_64 rng(key);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    TaylorSeries out(m);
    const std::size_t first = (s.size() + alpha_ - 1) / alpha_;
    for (std::size_t l = 1; l <= m; ++l) {
      const double re = unit(rng), im = unit(rng);
      if (l >= first) out[l] = cplx(re, im);
    }
    return out;
  }

  std::size_t alpha_;
  std::uint64_t seed_;
};

/// Largest |a_l - b_l| / (|b_l| + floor) over l = 1..m.
inline double max_relative_error(const TaylorSeries& a, const TaylorSeries& b, std::size_t m, double floor = 1e-15) {
  double worst = 0.0;
  for (std::size_t l = 1; l <= m; ++l) worst = std::max(worst, std::abs(a.at(l) - b.at(l)) / (std::abs(b.at(l)) + floor));
  return worst;
}

}  // namespace zfpf::testing

#endif  // ZFPF_TESTS_SUPPORT_MODELS_HPP
