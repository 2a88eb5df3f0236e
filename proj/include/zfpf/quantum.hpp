// Copyright 2026 The zfpf Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ZFPF_QUANTUM_HPP
#define ZFPF_QUANTUM_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zfpf/errors.hpp"
#include "zfpf/family.hpp"
#include "zfpf/graph.hpp"
#include "zfpf/interpolate.hpp"
#include "zfpf/series.hpp"

namespace zfpf {

using Matrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

/// Default bound on the row count q^|R| of matrices built by the lambda DP.
inline constexpr std::size_t kDefaultDpMatrixCap = std::size_t{1} << 14;

/// Hermitian matrix acting on `support` (sorted sites). Row/column index is
/// lexicographic over the support's site values, first site most significant.
struct LocalTerm {
  VertexSet support;
  Matrix matrix;
};

/// H = sum_j H_j over n_sites sites of dimension q, each term on <= k sites,
/// each site touched by <= d terms.
struct Hamiltonian {
  std::size_t n_sites = 0;
  std::size_t q = 2;
  std::size_t k = 1;
  std::size_t d = 1;
  std::vector<LocalTerm> terms;
};

inline std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  while (e--) {
    if (r > std::numeric_limits<std::size_t>::max() / base) throw CapabilityError("dimension overflow");
    r *= base;
  }
  return r;
}

inline bool is_hermitian(const Matrix& a, double tol = 1e-12) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

/// Largest |eigenvalue| of a Hermitian matrix.
inline double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline void validate(const Hamiltonian& h) {
  if (h.q < 2) throw InputError("q must be at least 2");
  if (h.k < 1 || h.d < 1) throw InputError("k and d must be positive");
  std::vector<std::size_t> degree(h.n_sites, 0);
  for (std::size_t j = 0; j < h.terms.size(); ++j) {
    const auto& t = h.terms[j];
    const std::string where = "term " + std::to_string(j) + ": ";
    if (t.support.empty()) throw InputError(where + "empty support");
    for (std::size_t i = 0; i < t.support.size(); ++i) {
      if (t.support[i] >= h.n_sites) throw InputError(where + "support site out of range");
      if (i > 0 && t.support[i - 1] >= t.support[i])
        throw InputError(where + "support must be sorted and duplicate-free");
      ++degree[t.support[i]];
    }
    if (t.support.size() > h.k) throw InputError(where + "support larger than k");
    const auto dim = static_cast<Eigen::Index>(ipow(h.q, t.support.size()));
    if (t.matrix.rows() != dim || t.matrix.cols() != dim)
      throw InputError(where + "matrix dimension must be q^|support|");
    if (!is_hermitian(t.matrix)) throw InputError(where + "matrix is not Hermitian");
  }
  for (std::size_t v = 0; v < h.n_sites; ++v)
    if (degree[v] > h.d)
      throw InputError("site " + std::to_string(v) + " appears in more than d terms");
}

/// max_j ||H_j|| (spectral norm).
inline double max_term_norm(const Hamiltonian& h) {
  double out = 0.0;
  for (const auto& t : h.terms) out = std::max(out, spectral_norm(t.matrix));
  return out;
}

/// O = tensor product of per-site positive operators, or the identity.
class TensorizedMeasurement {
 public:
  TensorizedMeasurement() = default;
  explicit TensorizedMeasurement(std::vector<Matrix> sites) : sites_(std::move(sites)), identity_(false) {}

  static TensorizedMeasurement identity() { return {}; }

  bool is_identity() const noexcept { return identity_; }
  std::size_t site_count() const noexcept { return sites_.size(); }

  Matrix site(std::size_t v, std::size_t q) const {
    if (identity_) return Matrix::Identity(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
    return sites_.at(v);
  }

  double site_trace(std::size_t v, std::size_t q) const {
    return identity_ ? static_cast<double>(q) : sites_.at(v).trace().real();
  }

  /// Product of per-site traces over `sites`.
  double trace(std::span<const Vertex> sites, std::size_t q) const {
    double t = 1.0;
    for (Vertex v : sites) t *= site_trace(v, q);
    return t;
  }

  void validate(std::size_t n_sites, std::size_t q) const {
    if (identity_) return;
    if (sites_.size() != n_sites) throw InputError("measurement must list one matrix per site");
    for (std::size_t v = 0; v < n_sites; ++v) {
      const auto& o = sites_[v];
      const std::string where = "measurement site " + std::to_string(v) + ": ";
      if (o.rows() != static_cast<Eigen::Index>(q) || o.cols() != static_cast<Eigen::Index>(q))
        throw InputError(where + "matrix must be q x q");
      if (!is_hermitian(o)) throw InputError(where + "matrix is not Hermitian");
      Eigen::SelfAdjointEigenSolver<Matrix> es(o, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -1e-12) throw InputError(where + "matrix is not positive semidefinite");
      if (!(o.trace().real() > 0.0)) throw InputError(where + "trace must be positive");
    }
  }

 private:
  std::vector<Matrix> sites_;
  bool identity_ = true;
};

/// Computational-basis outcome, one value in [0, q) per site.
struct SiteAssignment {
  std::vector<std::size_t> sigma;
};

namespace detail {

inline std::vector<std::size_t> digit_positions(std::span<const Vertex> support, std::span<const Vertex> sites) {
  std::vector<std::size_t> pos;
  for (Vertex v : support) {
    std::size_t p = position_in(sites, v);
    if (p == sites.size()) throw ContractViolation("term support not contained in region");
    pos.push_back(p);
  }
  return pos;
}

}  // namespace detail

/// term tensored with identities on the remaining `sites` (sorted, superset of the support).
inline SparseMatrix embed(const LocalTerm& term, std::span<const Vertex> sites, std::size_t q) {
  const std::size_t r = sites.size();
  const std::size_t dim = ipow(q, r);
  const std::size_t s = term.support.size();
  const std::size_t local_dim = ipow(q, s);
  const auto pos = detail::digit_positions(term.support, sites);
  // stride of each support site's digit in the region index
  std::vector<std::size_t> stride(s);
  for (std::size_t i = 0; i < s; ++i) stride[i] = ipow(q, r - 1 - pos[i]);

  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(dim * local_dim);
  for (std::size_t a = 0; a < dim; ++a) {
    std::size_t local_row = 0;
    std::size_t base = a;
    for (std::size_t i = 0; i < s; ++i) {
      const std::size_t digit = (a / stride[i]) % q;
      local_row = local_row * q + digit;
      base -= digit * stride[i];
    }
    for (std::size_t c = 0; c < local_dim; ++c) {
      const cplx v = term.matrix(static_cast<Eigen::Index>(local_row), static_cast<Eigen::Index>(c));
      if (v == cplx{}) continue;
      std::size_t b = base;
      std::size_t rem = c;
      for (std::size_t i = s; i-- > 0;) {
        b += (rem % q) * stride[i];
        rem /= q;
      }
      trips.emplace_back(static_cast<int>(a), static_cast<int>(b), v);
    }
  }
  SparseMatrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

/// Dense tensor product of the measurement's site operators over `sites`.
inline Matrix measurement_on(const TensorizedMeasurement& o, std::span<const Vertex> sites, std::size_t q) {
  Matrix acc = Matrix::Identity(1, 1);
  for (Vertex v : sites) {
    const Matrix f = o.site(v, q);
    Matrix next(acc.rows() * f.rows(), acc.cols() * f.cols());
    for (Eigen::Index i = 0; i < acc.rows(); ++i)
      for (Eigen::Index j = 0; j < acc.cols(); ++j)
        next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = acc(i, j) * f;
    acc = std::move(next);
  }
  return acc;
}

/// One vertex per term; terms sharing a site are adjacent. Labels encode the
/// support size and the matrix entries rounded to 1e-14.
inline DependencyGraph to_dependency_graph(const Hamiltonian& h) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::vector<Vertex>> by_site(h.n_sites);
  for (std::size_t j = 0; j < h.terms.size(); ++j)
    for (Vertex v : h.terms[j].support) by_site.at(v).push_back(static_cast<Vertex>(j));
  for (const auto& touching : by_site)
    for (std::size_t a = 0; a < touching.size(); ++a)
      for (std::size_t b = a + 1; b < touching.size(); ++b) edges.emplace_back(touching[a], touching[b]);

  std::vector<VertexLabel> labels;
  for (const auto& t : h.terms) {
    VertexLabel l;
    const auto put = [&l](std::int64_t x) {
      char buf[sizeof x];
      std::memcpy(buf, &x, sizeof x);
      l.bytes.append(buf, sizeof x);
    };
    put(static_cast<std::int64_t>(t.support.size()));
    for (Eigen::Index i = 0; i < t.matrix.rows(); ++i)
      for (Eigen::Index j = 0; j < t.matrix.cols(); ++j) {
        put(std::llround(t.matrix(i, j).real() * 1e14));
        put(std::llround(t.matrix(i, j).imag() * 1e14));
      }
    labels.push_back(std::move(l));
  }
  return DependencyGraph(h.terms.size(), edges, std::move(labels));
}

/// Runs the dynamic programme
///   H_{S,l} = sum_{j in S} H_j (H_{S,l-1} + H_{S\{j},l-1}),  H_{{},0} = I,
/// over every subset S of `term_ids`, on the sites R covered by those terms,
/// carrying the factor (-1)^l / l! along. Entry [mask][l] of the result is
/// lambda_{S,l} = (-1)^l / l! * Tr[H_{S,l} O_R] / Tr[O_R] for the terms
/// selected by `mask`.
inline std::vector<TaylorSeries> quantum_lambda_table(const Hamiltonian& h, const TensorizedMeasurement& o,
                                                      std::span<const Vertex> term_ids, std::size_t m,
                                                      std::size_t matrix_cap = kDefaultDpMatrixCap) {
  const std::size_t k = term_ids.size();
  if (k >= 8 * sizeof(std::size_t) - 1) throw CapabilityError("too many terms in one lambda table");
  VertexSet region;
  for (Vertex j : term_ids) {
    const auto& supp = h.terms.at(j).support;
    region.insert(region.end(), supp.begin(), supp.end());
  }
  std::sort(region.begin(), region.end());
  region.erase(std::unique(region.begin(), region.end()), region.end());
  const double log_dim = static_cast<double>(region.size()) * std::log2(static_cast<double>(h.q));
  if (log_dim > std::log2(static_cast<double>(matrix_cap)) + 1e-9)
    throw CapabilityError("lambda DP needs q^" + std::to_string(region.size()) +
                          " rows, above the matrix cap " + std::to_string(matrix_cap));
  const auto dim = static_cast<Eigen::Index>(ipow(h.q, region.size()));

  std::vector<SparseMatrix> local;
  local.reserve(k);
  for (Vertex j : term_ids) local.push_back(embed(h.terms[j], region, h.q));

  // Tr[X O_R] / Tr[O_R]
  const bool plain = o.is_identity();
  Matrix weight;
  double norm = static_cast<double>(dim);
  if (!plain) {
    weight = measurement_on(o, region, h.q).transpose();
    norm = o.trace(region, h.q);
  }
  const auto normalized_trace = [&](const Matrix& x) {
    return plain ? x.trace() / norm : x.cwiseProduct(weight).sum() / norm;
  };

  const std::size_t masks = std::size_t{1} << k;
  std::vector<TaylorSeries> out(masks, TaylorSeries(m));
  std::vector<int> popcount(masks);
  for (std::size_t mask = 0; mask < masks; ++mask) popcount[mask] = __builtin_popcountll(mask);

  // prev[mask] holds the scaled H_{mask,l-1}; empty matrices stand for zero.
  std::vector<Matrix> prev(masks), cur(masks);
  prev[0] = Matrix::Identity(dim, dim);
  Matrix sum(dim, dim);
  for (std::size_t l = 1; l <= m; ++l) {
    for (std::size_t mask = 1; mask < masks; ++mask) {
      if (static_cast<std::size_t>(popcount[mask]) > l) {
        cur[mask].resize(0, 0);
        continue;
      }
      bool any = false;
      for (std::size_t i = 0; i < k; ++i) {
        if (!(mask >> i & 1u)) continue;
        const Matrix& a = prev[mask];
        const Matrix& b = prev[mask ^ (std::size_t{1} << i)];
        if (a.size() == 0 && b.size() == 0) continue;
        Matrix x;
        if (a.size() == 0) x = local[i] * b;
        else if (b.size() == 0) x = local[i] * a;
        else x = local[i] * (a + b);
        if (any) sum += x;
        else {
          sum = std::move(x);
          any = true;
        }
      }
      if (!any) {
        cur[mask].resize(0, 0);
        continue;
      }
      cur[mask] = sum * cplx(-1.0 / static_cast<double>(l));
      out[mask][l] = normalized_trace(cur[mask]);
    }
    cur[0].resize(0, 0);
    std::swap(prev, cur);
  }
  return out;
}

/// lambda_{G[S],l} of the quantum family for the terms `term_ids`: zero when
/// |S| > l, otherwise the DP value above.
inline cplx quantum_lambda(const Hamiltonian& h, const TensorizedMeasurement& o, std::span<const Vertex> term_ids,
                           std::size_t l, std::size_t matrix_cap = kDefaultDpMatrixCap) {
  if (term_ids.empty() || term_ids.size() > l) return {};
  auto table = quantum_lambda_table(h, o, term_ids, l, matrix_cap);
  return table.back()[l];
}

/// f_G(z) = Tr[exp(-z H) O] / Tr[O] over the term dependency graph; (1, 2q^{3k})-bounded.
class QuantumFamily {
 public:
  QuantumFamily(const Hamiltonian& h, const TensorizedMeasurement& o, std::size_t matrix_cap = kDefaultDpMatrixCap)
      : h_(h), o_(o), cap_(matrix_cap) {}

  std::size_t alpha() const noexcept { return 1; }
  double f0(const DependencyGraph&) const noexcept { return 1.0; }

  TaylorSeries lambda_series(const DependencyGraph&, std::span<const Vertex> s, std::size_t m) const {
    if (s.empty()) return TaylorSeries(m);
    return quantum_lambda_table(h_, o_, s, m, cap_).back();
  }

  std::vector<TaylorSeries> lambda_table(const DependencyGraph&, std::span<const Vertex> s, std::size_t m) const {
    return quantum_lambda_table(h_, o_, s, m, cap_);
  }

 private:
  const Hamiltonian& h_;
  TensorizedMeasurement o_;
  std::size_t cap_;
};

/// Radius 1/(5 e d k h) of the disc on which |log Z_{H,O}(beta)/Tr O| <= n.
inline double beta0(double k, double d, double h) {
  if (!(k > 0.0 && d > 0.0 && h > 0.0)) throw DomainError("beta0: k, d and h must be positive");
  return 1.0 / (5.0 * std::numbers::e * d * k * h);
}

struct QuantumOptions {
  EngineOptions engine{};
  std::size_t matrix_cap = kDefaultDpMatrixCap;
};

struct PartitionReport {
  EstimateReport estimate;
  /// null when every term vanishes (beta0 unbounded).
  std::optional<double> beta0;
  double term_norm = 0.0;
};

/// Z_{H,O}(beta) = Tr[exp(-beta H) O] on a caller-chosen region with a
/// caller-supplied zero-free bound M for Z/Tr O.
inline PartitionReport estimate_partition(const Hamiltonian& h, const TensorizedMeasurement& o,
                                          const GoodRegion& region, cplx beta, double eps, double delta, double M,
                                          const QuantumOptions& options = {}) {
  validate(h);
  o.validate(h.n_sites, h.q);
  VertexSet all_sites(h.n_sites);
  for (std::size_t v = 0; v < h.n_sites; ++v) all_sites[v] = static_cast<Vertex>(v);
  const double tr = o.trace(all_sites, h.q);
  double log_tr = 0.0;
  for (Vertex v : all_sites) log_tr += std::log(o.site_trace(v, h.q));

  PartitionReport rep;
  rep.term_norm = max_term_norm(h);
  if (rep.term_norm > 0.0) rep.beta0 = beta0(static_cast<double>(h.k), static_cast<double>(h.d), rep.term_norm);

  const DependencyGraph g = to_dependency_graph(h);
  const QuantumFamily family(h, o, options.matrix_cap);
  rep.estimate = estimate(family, g, region, beta, eps, M, delta, options.engine);
  rep.estimate.value *= tr;
  rep.estimate.log_value += log_tr;
  return rep;
}

/// High-temperature estimator: region = disc(beta0) with beta0 = 1/(5edkh),
/// h = max term norm, M = n. Requires |beta| <= (1 - delta) beta0.
inline PartitionReport estimate_partition(const Hamiltonian& h, const TensorizedMeasurement& o, cplx beta,
                                          double eps, double delta, const QuantumOptions& options = {}) {
  validate(h);
  o.validate(h.n_sites, h.q);
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("epsilon must lie in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
  const double norm = max_term_norm(h);
  if (norm == 0.0) {
    // Z = Tr O identically.
    PartitionReport rep;
    VertexSet all_sites(h.n_sites);
    for (std::size_t v = 0; v < h.n_sites; ++v) all_sites[v] = static_cast<Vertex>(v);
    rep.estimate.value = o.trace(all_sites, h.q);
    for (Vertex v : all_sites) rep.estimate.log_value += std::log(o.site_trace(v, h.q));
    return rep;
  }
  const double b0 = beta0(static_cast<double>(h.k), static_cast<double>(h.d), norm);
  if (std::abs(beta) > (1.0 - delta) * b0 * (1.0 + 1e-12))
    throw OutOfRegimeError("|beta| = " + std::to_string(std::abs(beta)) + " exceeds (1 - delta) * beta0 = " +
                           std::to_string((1.0 - delta) * b0));
  const double M = std::max<double>(1.0, static_cast<double>(h.n_sites));
  return estimate_partition(h, o, disc_region(b0, beta), beta, eps, delta, M, options);
}

/// Self-reduction sampler for the computational-basis Gibbs distribution
/// mu(sigma) = <sigma| exp(-beta H) |sigma> / Z. Site v's value is drawn with
/// weights max(Re z~_{v,j}, 0), where z~_{v,j} estimates Z under the
/// measurement fixing earlier sites to the drawn values and site v to j, with
/// multiplicative error eps/(10 n). Estimates are memoized per prefix.
class GibbsSampler {
 public:
  GibbsSampler(const Hamiltonian& h, double beta, double eps, double delta = 0.1, QuantumOptions options = {})
      : h_(h), beta_(beta), eps_(eps), delta_(delta), options_(options) {
    validate(h_);
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("sampler: epsilon must lie in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("sampler: delta must lie in (0,1)");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw OutOfRegimeError("sampler: beta must be positive and real");
    const double norm = max_term_norm(h_);
    if (norm > 0.0) {
      const double b0 = beta0(static_cast<double>(h.k), static_cast<double>(h.d), norm);
      if (beta > (1.0 - delta) * b0 * (1.0 + 1e-12))
        throw OutOfRegimeError("sampler: beta exceeds (1 - delta) * beta0");
    }
    eps0_ = eps / (10.0 * static_cast<double>(std::max<std::size_t>(1, h_.n_sites)));
  }

  double site_epsilon() const noexcept { return eps0_; }

  /// Clamped weights for the next site given already-fixed values of sites 0..prefix.size()-1.
  const std::vector<double>& weights(const std::vector<std::size_t>& prefix) {
    auto it = memo_.find(prefix);
    if (it != memo_.end()) return it->second;
    const std::size_t v = prefix.size();
    if (v >= h_.n_sites) throw ContractViolation("sampler prefix already covers every site");
    std::vector<double> w(h_.q);
    for (std::size_t j = 0; j < h_.q; ++j) {
      const auto o = projector_measurement(prefix, j);
      const auto rep = estimate_partition(h_, o, cplx(beta_), eps0_, delta_, options_);
      w[j] = std::max(rep.estimate.value.real(), 0.0);
    }
    double total = 0.0;
    for (double x : w) total += x;
    if (!(total > 0.0)) throw NumericError("sampler: every conditional weight vanished at site " + std::to_string(v));
    return memo_.emplace(prefix, std::move(w)).first->second;
  }

  /// Probability the sampler assigns to sigma (product of per-site selection probabilities).
  double chain_probability(const SiteAssignment& s) {
    double p = 1.0;
    std::vector<std::size_t> prefix;
    for (std::size_t v = 0; v < h_.n_sites; ++v) {
      const auto& w = weights(prefix);
      double total = 0.0;
      for (double x : w) total += x;
      p *= w.at(s.sigma.at(v)) / total;
      prefix.push_back(s.sigma[v]);
    }
    return p;
  }

  template <class Rng>
  SiteAssignment draw(Rng& rng) {
    SiteAssignment out;
    for (std::size_t v = 0; v < h_.n_sites; ++v) {
      const auto& w = weights(out.sigma);
      double total = 0.0;
      for (double x : w) total += x;
      // 53 random bits -> [0, 1)
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
      std::size_t pick = 0;
      double cum = 0.0;
      for (; pick + 1 < w.size(); ++pick) {
        cum += w[pick];
        if (u < cum) break;
      }
      while (w[pick] == 0.0 && pick > 0) --pick;
      out.sigma.push_back(pick);
    }
    return out;
  }

 private:
  TensorizedMeasurement projector_measurement(const std::vector<std::size_t>& prefix, std::size_t j) const {
    const auto q = static_cast<Eigen::Index>(h_.q);
    std::vector<Matrix> sites(h_.n_sites, Matrix::Identity(q, q));
    for (std::size_t u = 0; u <= prefix.size(); ++u) {
      const std::size_t value = u < prefix.size() ? prefix[u] : j;
      sites[u] = Matrix::Zero(q, q);
      sites[u](static_cast<Eigen::Index>(value), static_cast<Eigen::Index>(value)) = 1.0;
    }
    return TensorizedMeasurement(std::move(sites));
  }

  const Hamiltonian& h_;
  double beta_;
  double eps_;
  double delta_;
  double eps0_ = 0.0;
  QuantumOptions options_;
  std::map<std::vector<std::size_t>, std::vector<double>> memo_;
};

/// One approximate sample from mu_{H,beta} using a mt19937_64 stream seeded with `seed`.
inline SiteAssignment sample_gibbs(const Hamiltonian& h, double beta, double eps, std::uint64_t seed,
                                   double delta = 0.1, const QuantumOptions& options = {}) {
  GibbsSampler sampler(h, beta, eps, delta, options);
  std::mt19937_64 rng(seed);
  return sampler.draw(rng);
}

}  // namespace zfpf

#endif  // ZFPF_QUANTUM_HPP
