// Copyright 2026 The zfpf Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ZFPF_SERIES_HPP
#define ZFPF_SERIES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "zfpf/errors.hpp"

namespace zfpf {

using cplx = std::complex<double>;

/// Truncated power series c_0 + c_1 z + ... + c_m z^m about the origin.
class TaylorSeries {
 public:
  TaylorSeries() = default;
  /// Zero series of order m.
  explicit TaylorSeries(std::size_t order) : c_(order + 1) {}
  explicit TaylorSeries(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.resize(1);
  }
  TaylorSeries(std::initializer_list<cplx> coeffs) : c_(coeffs) {
    if (c_.empty()) c_.resize(1);
  }

  std::size_t order() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }

  cplx& operator[](std::size_t k) { return c_[k]; }
  const cplx& operator[](std::size_t k) const { return c_[k]; }

  /// Coefficient k, or zero beyond the stored order.
  cplx at(std::size_t k) const { return k < c_.size() ? c_[k] : cplx{}; }

  std::span<const cplx> coefficients() const noexcept { return c_; }
  std::vector<cplx>& data() noexcept { return c_; }

  /// Same series padded with zeros or cut to order m.
  TaylorSeries truncated(std::size_t m) const {
    std::vector<cplx> out(m + 1);
    for (std::size_t k = 0; k <= m && k < c_.size(); ++k) out[k] = c_[k];
    return TaylorSeries(std::move(out));
  }

  /// Horner evaluation.
  cplx operator()(cplx z) const {
    cplx acc{};
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
    return acc;
  }

  TaylorSeries& operator+=(const TaylorSeries& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }

  friend TaylorSeries operator+(TaylorSeries a, const TaylorSeries& b) { return a += b; }
  friend bool operator==(const TaylorSeries&, const TaylorSeries&) = default;

 private:
  std::vector<cplx> c_;
};

/// Cauchy product truncated at order m (defaults to the larger operand order).
inline TaylorSeries series_multiply(const TaylorSeries& a, const TaylorSeries& b,
                                    std::size_t m) {
  TaylorSeries out(m);
  for (std::size_t i = 0; i <= std::min(m, a.order()); ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; i + j <= m && j <= b.order(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline TaylorSeries series_multiply(const TaylorSeries& a, const TaylorSeries& b) {
  return series_multiply(a, b, std::max(a.order(), b.order()));
}

/// a(b(z)) truncated at order m; requires b(0) = 0.
inline TaylorSeries series_compose(const TaylorSeries& a, const TaylorSeries& b, std::size_t m) {
  if (b[0] != cplx{}) throw DomainError("series_compose: inner series must vanish at the origin");
  TaylorSeries acc(m);
  for (std::size_t k = std::min(a.order(), m) + 1; k-- > 0;) {
    acc = series_multiply(acc, b, m);
    acc[0] += a[k];
  }
  return acc;
}

inline TaylorSeries series_compose(const TaylorSeries& a, const TaylorSeries& b) {
  return series_compose(a, b, std::max(a.order(), b.order()));
}

/// log f via Newton's identity n g_n = n f_n - sum_{k=1}^{n-1} k g_k f_{n-k},
/// applied to f / f_0 with g_0 = ln f_0. Needs f_0 real and positive.
inline TaylorSeries newton_log(const TaylorSeries& f) {
  const cplx f0 = f[0];
  if (!(f0.real() > 0.0) || std::abs(f0.imag()) > 1e-12 * f0.real())
    throw DomainError("newton_log: constant term must be real and positive");
  const std::size_t m = f.order();
  std::vector<cplx> fn(m + 1);
  for (std::size_t k = 0; k <= m; ++k) fn[k] = f[k] / f0.real();
  TaylorSeries g(m);
  g[0] = std::log(f0.real());
  for (std::size_t n = 1; n <= m; ++n) {
    cplx acc = static_cast<double>(n) * fn[n];
    for (std::size_t k = 1; k < n; ++k) acc -= static_cast<double>(k) * g[k] * fn[n - k];
    g[n] = acc / static_cast<double>(n);
  }
  return g;
}

/// exp g via n f_n = sum_{k=1}^n k g_k f_{n-k}, f_0 = exp(g_0).
inline TaylorSeries series_exp(const TaylorSeries& g) {
  const std::size_t m = g.order();
  TaylorSeries f(m);
  f[0] = std::exp(g[0]);
  for (std::size_t n = 1; n <= m; ++n) {
    cplx acc{};
    for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * g[k] * f[n - k];
    f[n] = acc / static_cast<double>(n);
  }
  return f;
}

}  // namespace zfpf

#endif  // ZFPF_SERIES_HPP
