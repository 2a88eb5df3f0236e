// Copyright 2026 The zfpf Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ZFPF_INTERPOLATE_HPP
#define ZFPF_INTERPOLATE_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "zfpf/errors.hpp"
#include "zfpf/family.hpp"
#include "zfpf/series.hpp"

namespace zfpf {

/// Smallest m = ceil((1/delta) ln(M / (delta eps))), clamped below at 1, so
/// that (M/delta)(1-delta)^{m+1} < eps.
inline std::size_t required_order(double M, double delta, double eps) {
  if (!(M > 0.0) || !std::isfinite(M)) throw DomainError("required_order: M must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("required_order: delta must lie in (0,1)");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("required_order: epsilon must lie in (0,1)");
  const double m = std::ceil(std::log(M / (delta * eps)) / delta);
  return m < 1.0 ? 1 : static_cast<std::size_t>(m);
}

/// Bound on |g(z) - sum_{k<=m} g_k z^k| for |g| <= M on the unit disc and
/// dist(z, boundary) = delta.
inline double truncation_error_bound(double M, double delta, std::size_t m) {
  return M / delta * std::pow(1.0 - delta, static_cast<double>(m) + 1.0);
}

/// Zero-free bound for a polynomial of the given degree with no roots in the
/// unit disc, valid on the disc of radius b < 1: degree * ln(1/(1-b)) + |log p(0)|.
inline double polynomial_zero_free_bound(std::size_t degree, double b, double abs_log_p0) {
  if (!(b > 0.0 && b < 1.0)) throw DomainError("polynomial_zero_free_bound: b must lie in (0,1)");
  return static_cast<double>(degree) * std::log(1.0 / (1.0 - b)) + abs_log_p0;
}

enum class RegionKind { disc, strip, convex, custom };

inline const char* to_string(RegionKind k) {
  switch (k) {
    case RegionKind::disc: return "disc";
    case RegionKind::strip: return "strip";
    case RegionKind::convex: return "convex";
    case RegionKind::custom: return "custom";
  }
  return "?";
}

/// A region together with a holomorphic map h from the unit disc into it,
/// prepared for one query point x = h(z_x). `h` holds the Taylor coefficients
/// of the map (h[0] = 0); `gamma` is cost metadata only.
struct GoodRegion {
  RegionKind kind = RegionKind::custom;
  TaylorSeries h{cplx{}, cplx{1.0}};
  cplx query{};
  cplx z_x{};
  double gamma = 1.0;

  double radius = 0.0;       // disc
  cplx strip_beta{};         // strip / convex: segment [0, strip_beta]
  double strip_delta = 0.0;  // requested strip half-width
  double strip_rho = 1.0;    // rho' of the scaled strip polynomial

  cplx map(cplx z) const { return h(z); }
};

/// Disc of radius b; h(z) = b z and z_x = x / b.
inline GoodRegion disc_region(double b, cplx x) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("disc radius must be positive");
  GoodRegion r;
  r.kind = RegionKind::disc;
  r.h = TaylorSeries{cplx{}, cplx{b}};
  r.query = x;
  r.z_x = x / b;
  r.radius = b;
  return r;
}

/// Constants of the polynomial q(z) = (sum_{k<=N} (Cz)^k/k) / (sum_{k<=N} C^k/k)
/// that maps a disc of radius rho > 1 into a thin neighbourhood of [0, 1].
struct StripConstants {
  double delta_prime;
  double c;
  double rho;
  std::size_t degree;
};

inline constexpr std::size_t kMaxStripDegree = 1'000'000;

inline StripConstants strip_constants(double delta_prime) {
  if (!(delta_prime > 0.0)) throw DomainError("strip: delta' must be positive");
  StripConstants k{};
  k.delta_prime = delta_prime;
  const double inv = 1.0 / delta_prime;
  k.c = -std::expm1(-inv);
  k.rho = -std::expm1(-1.0 - inv) / k.c;
  const double n = std::floor((1.0 + inv) * std::exp(1.0 + inv));
  if (!(n <= static_cast<double>(kMaxStripDegree)))
    throw CapabilityError("strip map degree exceeds " + std::to_string(kMaxStripDegree) +
                          "; widen the strip or shorten the segment");
  k.degree = static_cast<std::size_t>(n);
  return k;
}

/// Polynomial p with p(0) = 0, p(1/rho') = beta and p(unit disc) inside the
/// delta-neighbourhood of the segment [0, beta]: p(z) = beta q_{delta'}(rho' z)
/// with delta' = delta / (4|beta|), capped at 1/2 (a narrower strip is still
/// contained in the requested one).
inline GoodRegion strip_map(cplx beta, double delta) {
  if (beta == cplx{}) throw DomainError("strip_map: beta must be nonzero");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("strip_map: delta must lie in (0,1)");
  const auto k = strip_constants(std::min(delta / (4.0 * std::abs(beta)), 0.5));
  std::vector<cplx> h(k.degree + 1);
  double norm = 0.0;
  double cp = 1.0;
  for (std::size_t j = 1; j <= k.degree; ++j) {
    cp *= k.c;
    norm += cp / static_cast<double>(j);
  }
  double scaled = 1.0;
  const double step = k.c * k.rho;
  for (std::size_t j = 1; j <= k.degree; ++j) {
    scaled *= step;
    h[j] = beta * (scaled / (static_cast<double>(j) * norm));
  }
  GoodRegion r;
  r.kind = RegionKind::strip;
  r.h = TaylorSeries(std::move(h));
  r.query = beta;
  r.z_x = 1.0 / k.rho;
  r.strip_beta = beta;
  r.strip_delta = delta;
  r.strip_rho = k.rho;
  return r;
}

/// Convex region known through a boundary-distance oracle: maps the disc onto
/// a strip around [0, x] of half-width dist([0,x], boundary) / 2.
inline GoodRegion convex_region(cplx x, const std::function<double(cplx)>& boundary_distance) {
  const double d0 = boundary_distance(cplx{});
  const double dx = boundary_distance(x);
  if (!(d0 > 0.0) || !(dx > 0.0)) throw DomainError("convex region must contain 0 and x in its interior");
  const double half = std::min(d0, dx) / 2.0;
  GoodRegion r;
  if (x == cplx{}) {
    r = disc_region(half, x);
  } else {
    r = strip_map(x, std::min(half, 0.99));
  }
  r.kind = RegionKind::convex;
  return r;
}

/// User-supplied map coefficients and preimage.
inline GoodRegion custom_region(TaylorSeries h, cplx z_x, cplx x, double gamma = 1.0) {
  if (h[0] != cplx{}) throw DomainError("custom region map must vanish at the origin");
  GoodRegion r;
  r.kind = RegionKind::custom;
  r.h = std::move(h);
  r.z_x = z_x;
  r.query = x;
  r.gamma = gamma;
  return r;
}

/// The family of f o h: lambda^h_{H,k} = sum_{l<=k} [z^k] h(z)^l * lambda_{H,l}.
template <BoundedFamily F>
class ComposedFamily {
 public:
  ComposedFamily(const F& inner, const TaylorSeries& h, std::size_t m) : inner_(inner), powers_(m + 1) {
    if (h[0] != cplx{}) throw DomainError("compose_family: map must vanish at the origin");
    TaylorSeries hm = h.truncated(m);
    if (m >= 1) powers_[1] = hm;
    for (std::size_t l = 2; l <= m; ++l) {
      // h^l has no terms below z^l.
      TaylorSeries next(m);
      const TaylorSeries& prev = powers_[l - 1];
      for (std::size_t i = l - 1; i <= m; ++i) {
        if (prev[i] == cplx{}) continue;
        for (std::size_t j = 1; i + j <= m; ++j) next[i + j] += prev[i] * hm[j];
      }
      powers_[l] = std::move(next);
    }
  }

  std::size_t alpha() const { return inner_.alpha(); }
  double f0(const DependencyGraph& g) const { return inner_.f0(g); }

  /// [z^k] h(z)^l.
  cplx power_coefficient(std::size_t l, std::size_t k) const { return powers_.at(l).at(k); }

  TaylorSeries lambda_series(const DependencyGraph& g, std::span<const Vertex> s, std::size_t m) const {
    return transform(inner_.lambda_series(g, s, m), m);
  }

  std::vector<TaylorSeries> lambda_table(const DependencyGraph& g, std::span<const Vertex> s,
                                         std::size_t m) const
    requires TabulatedFamily<F>
  {
    auto table = inner_.lambda_table(g, s, m);
    for (std::size_t mask = 1; mask < table.size(); ++mask) table[mask] = transform(table[mask], m);
    return table;
  }

 private:
  TaylorSeries transform(const TaylorSeries& lam, std::size_t m) const {
    const std::size_t top = std::min(m, powers_.size() - 1);
    TaylorSeries out(m);
    for (std::size_t l = 1; l <= std::min(top, lam.order()); ++l) {
      const cplx v = lam[l];
      if (v == cplx{}) continue;
      const TaylorSeries& p = powers_[l];
      for (std::size_t k = l; k <= top; ++k) out[k] += p[k] * v;
    }
    return out;
  }

  const F& inner_;
  std::vector<TaylorSeries> powers_;
};

template <BoundedFamily F>
ComposedFamily<F> compose_family(const F& family, const GoodRegion& region, std::size_t m) {
  return ComposedFamily<F>(family, region.h, m);
}

struct EstimateReport {
  cplx value{};
  cplx log_value{};
  std::size_t order = 0;
  double truncation_bound = 0.0;
  double elapsed_ms = 0.0;
};

/// Estimates f_G(x) for x = h(z_x) assuming |log f_G| <= M on the region.
/// Half of eps goes to truncation, the rest is slack for rounding.
template <BoundedFamily F>
EstimateReport estimate(const F& family, const DependencyGraph& g, const GoodRegion& region, cplx x,
                        double eps, double M, double delta, EngineOptions options = {}) {
  const auto start = std::chrono::steady_clock::now();
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("estimate: epsilon must lie in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("estimate: delta must lie in (0,1)");
  if (!(M > 0.0)) throw DomainError("estimate: M must be positive");
  const cplx image = region.map(region.z_x);
  if (std::abs(image - x) > 1e-8 * std::max(1.0, std::abs(x)))
    throw InputError("estimate: region map does not send z_x to the query point");
  if (std::abs(region.z_x) > (1.0 - delta) * (1.0 + 1e-12))
    throw OutOfRegimeError("query point lies outside the delta-interior of the region (|z_x| = " +
                           std::to_string(std::abs(region.z_x)) + ")");

  EstimateReport rep;
  rep.order = required_order(M, delta, eps / 2.0);
  rep.truncation_bound = truncation_error_bound(M, delta, rep.order);
  const auto composed = compose_family(family, region, rep.order);
  const TaylorSeries series = log_taylor(composed, g, rep.order, options);
  rep.log_value = series(region.z_x);
  rep.value = std::exp(rep.log_value);
  if (!std::isfinite(rep.value.real()) || !std::isfinite(rep.value.imag()) ||
      !std::isfinite(rep.log_value.real()) || !std::isfinite(rep.log_value.imag()))
    throw NumericError("estimate: non-finite result; the zero-free bound M is likely violated");
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace zfpf

#endif  // ZFPF_INTERPOLATE_HPP
