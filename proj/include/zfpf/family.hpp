// Copyright 2026 The zfpf Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ZFPF_FAMILY_HPP
#define ZFPF_FAMILY_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "zfpf/errors.hpp"
#include "zfpf/graph.hpp"
#include "zfpf/parallel.hpp"
#include "zfpf/series.hpp"

namespace zfpf {

/// A multiplicative family f_G(z) = f_G(0) + sum_l (sum_{S subset V} lambda_{G[S],l}) z^l.
///
/// `lambda_series(g, S, m)` returns lambda_{G[S],1..m} at indices 1..m (index 0
/// is ignored) for a sorted subset S of the host graph `g`. Entries at orders
/// l with |S| > alpha * l must be zero. Implementations must be safe for
/// concurrent const calls.
template <class F>
concept BoundedFamily = requires(const F& f, const DependencyGraph& g,
                                 std::span<const Vertex> s, std::size_t m) {
  { f.alpha() } -> std::convertible_to<std::size_t>;
  { f.f0(g) } -> std::convertible_to<double>;
  { f.lambda_series(g, s, m) } -> std::convertible_to<TaylorSeries>;
};

/// Families that can produce lambda series for every subset of S at once.
/// `lambda_table(g, S, m)[mask]` is the series for {S[i] : bit i of mask}.
template <class F>
concept TabulatedFamily =
    BoundedFamily<F> && requires(const F& f, const DependencyGraph& g,
                                 std::span<const Vertex> s, std::size_t m) {
      { f.lambda_table(g, s, m) } -> std::convertible_to<std::vector<TaylorSeries>>;
    };

struct EngineOptions {
  unsigned threads = 1;
};

namespace detail {

inline VertexSet subset_of(std::span<const Vertex> s, std::size_t mask) {
  VertexSet out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (mask >> i & 1u) out.push_back(s[i]);
  return out;
}

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace detail

/// Memo of zeta_{G[S],1..m} keyed by vertex subset. Only connected subsets
/// with |S| <= alpha*m are ever stored; every other entry is zero.
class ZetaTable {
 public:
  const TaylorSeries* find(const VertexSet& s) const {
    auto it = map_.find(s);
    return it == map_.end() ? nullptr : &it->second;
  }
  TaylorSeries& slot(const VertexSet& s) { return map_[s]; }
  std::size_t size() const noexcept { return map_.size(); }

  cplx at(const VertexSet& s, std::size_t order) const {
    const TaylorSeries* z = find(s);
    return z ? z->at(order) : cplx{};
  }

 private:
  std::unordered_map<VertexSet, TaylorSeries, VertexSetHash> map_;
};

/// Computes the cluster coefficients zeta_{G[S],l} by the recurrence
///
///   zeta_{H,l} = lambda_{H,l} - sum_{s<l} (s/l) sum_{L u T = V_H} zeta_{H[L],s} lambda_{H[T],l-s}
///
/// and sums them into the Taylor coefficients of log f_G.
template <BoundedFamily F>
class CoefficientEngine {
 public:
  CoefficientEngine(const F& family, const DependencyGraph& g, std::size_t order,
                    EngineOptions options = {})
      : family_(family), g_(g), m_(order), alpha_(family.alpha()), options_(options) {
    if (order == 0) throw DomainError("truncation order must be at least 1");
    if (alpha_ == 0) throw DomainError("family alpha must be positive");
  }

  std::size_t order() const noexcept { return m_; }
  std::size_t max_subset_size() const noexcept { return std::min(g_.size(), alpha_ * m_); }

  /// lambda_{G[T],1..m}, memoized.
  const TaylorSeries& lambda(const VertexSet& t) {
    auto it = lambdas_.find(t);
    if (it != lambdas_.end()) return it->second;
    return lambdas_.emplace(t, family_.lambda_series(g_, t, m_)).first->second;
  }

  /// zeta_{G[S],1..m}; S must be sorted and induce a connected subgraph.
  const TaylorSeries& zeta_series(const VertexSet& s) {
    detail::check_subset(g_, s);
    if (s.empty() || !is_connected_subset(g_, s))
      throw ContractViolation("zeta requested for a disconnected or empty subset");
    if (s.size() > alpha_ * m_) return zero_;
    if (const TaylorSeries* z = zetas_.find(s); z && z->order() == m_) return *z;
    const std::size_t full = (std::size_t{1} << s.size()) - 1;
    for (std::size_t mask = 1; mask < full; ++mask) {
      VertexSet l = detail::subset_of(s, mask);
      if (is_connected_subset(g_, l)) zeta_series(l);
    }
    for (std::size_t mask = 1; mask <= full; ++mask) lambda(detail::subset_of(s, mask));
    TaylorSeries& out = zetas_.slot(s);
    out = compute(s);
    return out;
  }

  cplx zeta(const VertexSet& s, std::size_t order) {
    if (order == 0 || order > m_) throw DomainError("zeta order out of range");
    return zeta_series(s)[order];
  }

  /// Coefficients of log f_G up to order m: c_0 = ln f_G(0), c_l = sum_S zeta_{G[S],l}.
  TaylorSeries log_taylor() {
    TaylorSeries out(m_);
    out[0] = std::log(family_.f0(g_));
    if (g_.empty()) return out;
    index_ = enumerate_connected_subsets(g_, max_subset_size());
    prepare_lambdas();

    std::vector<std::vector<const VertexSet*>> levels(max_subset_size() + 1);
    for (const auto& s : index_.subsets()) {
      zetas_.slot(s);
      levels[s.size()].push_back(&s);
    }
    for (auto& level : levels) {
      std::vector<TaylorSeries*> slots;
      slots.reserve(level.size());
      for (const VertexSet* s : level) slots.push_back(&zetas_.slot(*s));
      detail::parallel_for(level.size(), options_.threads,
                           [&](std::size_t i) { *slots[i] = compute(*level[i]); });
    }
    for (const auto& s : index_.subsets()) {
      const TaylorSeries& z = *zetas_.find(s);
      for (std::size_t l = 1; l <= m_; ++l) out[l] += z[l];
    }
    return out;
  }

  const ConnectedSubsetIndex& index() const noexcept { return index_; }
  const ZetaTable& zeta_table() const noexcept { return zetas_; }

 private:
  // Fills the lambda memo for every nonempty subset of every indexed set.
  void prepare_lambdas() {
    std::vector<const VertexSet*> owners;
    std::vector<std::vector<std::pair<std::size_t, TaylorSeries*>>> owned;
    if constexpr (TabulatedFamily<F>) {
      // Largest sets first: each becomes a table owner unless already covered.
      std::vector<const VertexSet*> order;
      for (const auto& s : index_.subsets()) order.push_back(&s);
      std::stable_sort(order.begin(), order.end(),
                       [](auto* a, auto* b) { return a->size() > b->size(); });
      for (const VertexSet* s : order) {
        if (lambdas_.count(*s)) continue;
        owners.push_back(s);
        owned.emplace_back();
        const std::size_t full = (std::size_t{1} << s->size()) - 1;
        for (std::size_t mask = 1; mask <= full; ++mask) {
          auto [it, fresh] = lambdas_.try_emplace(detail::subset_of(*s, mask));
          if (fresh) owned.back().emplace_back(mask, &it->second);
        }
      }
      detail::parallel_for(owners.size(), options_.threads, [&](std::size_t i) {
        auto table = family_.lambda_table(g_, *owners[i], m_);
        for (auto& [mask, dst] : owned[i]) *dst = std::move(table[mask]);
      });
    } else {
      std::vector<std::pair<const VertexSet*, TaylorSeries*>> todo;
      for (const auto& s : index_.subsets()) {
        const std::size_t full = (std::size_t{1} << s.size()) - 1;
        for (std::size_t mask = 1; mask <= full; ++mask) {
          auto [it, fresh] = lambdas_.try_emplace(detail::subset_of(s, mask));
          if (fresh) todo.emplace_back(&it->first, &it->second);
        }
      }
      detail::parallel_for(todo.size(), options_.threads, [&](std::size_t i) {
        *todo[i].second = family_.lambda_series(g_, *todo[i].first, m_);
      });
    }
  }

  // zeta series of connected S, assuming lambda of all subsets of S and zeta
  // of all connected proper subsets are available.
  TaylorSeries compute(const VertexSet& s) const {
    const std::size_t k = s.size();
    const std::size_t full = (std::size_t{1} << k) - 1;
    const std::size_t width = m_ + 1;

    // up[U][j] = sum over T with U <= T <= S, T nonempty, of lambda_{G[T],j}.
    std::vector<cplx> up((full + 1) * width);
    for (std::size_t mask = 1; mask <= full; ++mask) {
      const TaylorSeries& lam = lambdas_.at(detail::subset_of(s, mask));
      for (std::size_t j = 1; j <= m_; ++j) up[mask * width + j] = lam.at(j);
    }
    for (std::size_t bit = 0; bit < k; ++bit)
      for (std::size_t mask = 0; mask <= full; ++mask)
        if (!(mask >> bit & 1u))
          for (std::size_t j = 1; j <= m_; ++j)
            up[mask * width + j] += up[(mask | (std::size_t{1} << bit)) * width + j];

    // Cross terms from proper connected L; T ranges over supersets of S \ L.
    std::vector<cplx> acc(width);
    for (std::size_t mask = 1; mask < full; ++mask) {
      const TaylorSeries* zl = zetas_.find(detail::subset_of(s, mask));
      if (!zl) continue;
      const std::size_t l_size = static_cast<std::size_t>(__builtin_popcountll(mask));
      const std::size_t s_lo = detail::ceil_div(l_size, alpha_);
      const std::size_t rest = full ^ mask;
      const std::size_t t_lo = detail::ceil_div(static_cast<std::size_t>(__builtin_popcountll(rest)), alpha_);
      const cplx* u = &up[rest * width];
      for (std::size_t sidx = s_lo; sidx < m_; ++sidx) {
        const cplx w = static_cast<double>(sidx) * (*zl)[sidx];
        if (w == cplx{}) continue;
        for (std::size_t l = sidx + std::max<std::size_t>(t_lo, 1); l <= m_; ++l) acc[l] += w * u[l - sidx];
      }
    }

    // L = S itself depends on lower orders of the series being built.
    const TaylorSeries& lam_s = lambdas_.at(s);
    const cplx* u_all = &up[0];
    TaylorSeries z(m_);
    const std::size_t first = detail::ceil_div(k, alpha_);
    for (std::size_t l = first; l <= m_; ++l) {
      cplx cross = acc[l];
      for (std::size_t sidx = first; sidx < l; ++sidx)
        cross += static_cast<double>(sidx) * z[sidx] * u_all[l - sidx];
      z[l] = lam_s.at(l) - cross / static_cast<double>(l);
    }
    return z;
  }

  const F& family_;
  const DependencyGraph& g_;
  std::size_t m_;
  std::size_t alpha_;
  EngineOptions options_;
  ConnectedSubsetIndex index_;
  std::unordered_map<VertexSet, TaylorSeries, VertexSetHash> lambdas_;
  ZetaTable zetas_;
  TaylorSeries zero_{TaylorSeries(m_)};
};

/// Taylor coefficients of log f_G at the origin up to order m.
template <BoundedFamily F>
TaylorSeries log_taylor(const F& family, const DependencyGraph& g, std::size_t m,
                        EngineOptions options = {}) {
  return CoefficientEngine<F>(family, g, m, options).log_taylor();
}

/// zeta_{G[S],order} using the memo `cache` (the engine that owns it).
template <BoundedFamily F>
cplx zeta(CoefficientEngine<F>& cache, const VertexSet& s, std::size_t order) {
  return cache.zeta(s, order);
}

/// Reference evaluation of the recurrence over every nonempty subset of a small
/// host graph, enumerating all ordered covers (L, T) directly and applying no
/// connectivity or size shortcut. Result is indexed by vertex bitmask.
template <BoundedFamily F>
std::vector<TaylorSeries> zeta_exhaustive(const F& family, const DependencyGraph& g, std::size_t m) {
  const std::size_t n = g.size();
  if (n > 16) throw CapabilityError("zeta_exhaustive: host graph too large");
  const std::size_t all = std::size_t{1} << n;
  VertexSet everyone(n);
  for (std::size_t i = 0; i < n; ++i) everyone[i] = static_cast<Vertex>(i);
  std::vector<TaylorSeries> lam(all, TaylorSeries(m)), z(all, TaylorSeries(m));
  for (std::size_t mask = 1; mask < all; ++mask)
    lam[mask] = family.lambda_series(g, detail::subset_of(everyone, mask), m).truncated(m);

  std::vector<std::size_t> by_size(all - 1);
  for (std::size_t i = 0; i + 1 < all; ++i) by_size[i] = i + 1;
  std::stable_sort(by_size.begin(), by_size.end(), [](std::size_t a, std::size_t b) {
    return __builtin_popcountll(a) < __builtin_popcountll(b);
  });
  for (std::size_t mask : by_size) {
    for (std::size_t l = 1; l <= m; ++l) {
      cplx cross{};
      for (std::size_t s = 1; s < l; ++s) {
        // Each element of mask goes to L only, T only, or both.
        for (std::size_t left = mask;; left = (left - 1) & mask) {
          if (left != 0) {
            const std::size_t only_t = mask ^ left;
            for (std::size_t both = left;; both = (both - 1) & left) {
              const std::size_t right = only_t | both;
              if (right != 0) cross += static_cast<double>(s) * z[left][s] * lam[right][l - s];
              if (both == 0) break;
            }
          }
          if (left == 0) break;
        }
      }
      z[mask][l] = lam[mask][l] - cross / static_cast<double>(l);
    }
  }
  return z;
}

}  // namespace zfpf

#endif  // ZFPF_FAMILY_HPP
