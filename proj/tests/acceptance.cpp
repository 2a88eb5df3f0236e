// Copyright 2026 The zfpf Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "support/models.hpp"
#include "zfpf/zfpf.hpp"

namespace {

using namespace zfpf;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

TensorizedMeasurement random_diagonal_measurement(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.2, 1.5);
  std::vector<Matrix> sites;
  for (std::size_t v = 0; v < n; ++v) {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = u(rng);
    d(1, 1) = u(rng);
    sites.push_back(d);
  }
  return TensorizedMeasurement(sites);
}

// Engine coefficients vs newton_log of the dense f-series.
Outcome coefficient_equivalence() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i) % 4;
    const auto h = testing::random_k2d2(n, rng);
    const auto o = i % 2 ? random_diagonal_measurement(n, rng) : TensorizedMeasurement::identity();
    const auto c = log_taylor(QuantumFamily(h, o), to_dependency_graph(h), 6);
    const auto ref = newton_log(oracle::exact_f_series(h, o, 6));
    worst = std::max(worst, testing::max_relative_error(c, ref, 6));
  }
  return {worst <= 1e-9, fmt("50 instances, max relative coefficient error %.3g (limit 1e-9)", worst)};
}

// High-temperature estimator against exact partition functions.
Outcome estimator_accuracy() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int good = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i) % 4;
    const auto h = testing::random_k2d2(n, rng);
    const auto o = TensorizedMeasurement::identity();
    const double b0 = beta0(2.0, 2.0, max_term_norm(h));
    std::vector<cplx> betas{0.9 * b0};
    for (int j = 0; j < 5; ++j) betas.push_back(std::polar(0.9 * b0 * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng)));
    double instance_worst = 0.0;
    for (cplx beta : betas) {
      const cplx est = estimate_partition(h, o, beta, 1e-3, 0.1).estimate.value;
      const cplx exact = oracle::exact_partition(h, o, beta);
      instance_worst = std::max(instance_worst, std::abs(est / exact - 1.0));
    }
    worst = std::max(worst, instance_worst);
    good += instance_worst <= 1e-3;
  }
  return {good == 50, fmt("%.0f/50 instances within 1e-3 (worst %.3g over 300 evaluations)", good, worst)};
}

// Cluster coefficients vanish off connected subsets and above alpha*l.
Outcome structural_zeros() {
  double worst = 0.0;
  std::size_t graphs = 0, checked = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::uint64_t codes = std::uint64_t{1} << (n * (n - 1) / 2);
    for (std::uint64_t code = 0; code < codes; ++code) {
      const auto g = testing::graph_from_code(n, code);
      for (std::size_t alpha : {1u, 2u}) {
        const testing::SyntheticFamily fam(alpha, code * 131 + n * 7 + alpha);
        const auto z = zeta_exhaustive(fam, g, 4);
        for (std::size_t mask = 1; mask < z.size(); ++mask) {
          VertexSet s;
          for (Vertex v = 0; v < n; ++v)
            if (mask >> v & 1u) s.push_back(v);
          const bool connected = is_connected_subset(g, s);
          for (std::size_t l = 1; l <= 4; ++l)
            if (!connected || s.size() > alpha * l) {
              worst = std::max(worst, std::abs(z[mask][l]));
              ++checked;
            }
        }
      }
      ++graphs;
    }
  }
  return {worst <= 1e-12, fmt("%.0f labeled graphs (n <= 6, alpha 1 and 2), %.0f forced zeros, max |zeta| %.3g",
                              static_cast<double>(graphs), static_cast<double>(checked), worst)};
}

std::set<VertexSet> brute_force_connected(const DependencyGraph& g, std::size_t max_size) {
  std::set<VertexSet> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << g.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > max_size) continue;
    VertexSet s;
    for (Vertex v = 0; v < g.size(); ++v)
      if (mask >> v & 1u) s.push_back(v);
    if (is_connected_subset(g, s)) out.insert(s);
  }
  return out;
}

bool enumeration_ok(const DependencyGraph& g, std::size_t l_max, std::size_t& bound_violations) {
  const auto idx = enumerate_connected_subsets(g, l_max);
  const std::set<VertexSet> got(idx.subsets().begin(), idx.subsets().end());
  if (got.size() != idx.size() || got != brute_force_connected(g, l_max)) return false;
  const double delta = static_cast<double>(g.max_degree());
  for (Vertex v = 0; v < g.size(); ++v)
    for (std::size_t l = 1; l <= l_max; ++l) {
      // Rounded up: for l = 1 the bound is 1/2 but every vertex is its own 1-set.
      const double bound = std::ceil(std::pow(std::numbers::e * delta, static_cast<double>(l) - 1.0) / 2.0);
      if (static_cast<double>(idx.count_containing(v, l)) > bound) ++bound_violations;
    }
  return true;
}

// Connected-subset enumeration: every labeled graph up to 7 vertices, random
// bounded-degree graphs for 8..12 vertices.
Outcome subgraph_enumeration() {
  std::size_t mismatches = 0, violations = 0, graphs = 0;
  for (std::size_t n = 1; n <= 7; ++n) {
    const std::uint64_t codes = std::uint64_t{1} << (n * (n - 1) / 2);
    for (std::uint64_t code = 0; code < codes; ++code) {
      const auto g = testing::graph_from_code(n, code);
      if (g.max_degree() > 4) continue;
      mismatches += !enumeration_ok(g, 6, violations);
      ++graphs;
    }
  }
  std::mt19937_64 rng(404);
  for (std::size_t n = 8; n <= 12; ++n)
    for (int trial = 0; trial < 400; ++trial) {
      const double p = 0.2 + 0.8 * static_cast<double>(trial % 5) / 4.0;
      const DependencyGraph g(n, testing::random_bounded_edges(n, 4, p, rng));
      mismatches += !enumeration_ok(g, 6, violations);
      ++graphs;
    }
  return {mismatches == 0 && violations == 0,
          fmt("%.0f graphs (Delta <= 4, l <= 6): %.0f enumeration mismatches, %.0f count-bound violations",
              static_cast<double>(graphs), static_cast<double>(mismatches), static_cast<double>(violations))};
}

// Empirical total-variation distance of the self-reduction sampler.
Outcome sampler_tv() {
  std::mt19937_64 model_rng(505);
  const auto h = testing::random_k2d2(3, model_rng);
  const double beta = 0.9 * beta0(2.0, 2.0, max_term_norm(h));
  GibbsSampler sampler(h, beta, 0.1);
  std::mt19937_64 rng(2026);
  const std::size_t samples = 10000;
  std::vector<double> counts(8, 0.0);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto s = sampler.draw(rng);
    std::size_t idx = 0;
    for (std::size_t v : s.sigma) idx = idx * 2 + v;
    counts[idx] += 1.0;
  }
  const auto exact = oracle::exact_gibbs_distribution(h, beta);
  double tv = 0.0;
  for (std::size_t i = 0; i < 8; ++i) tv += std::abs(counts[i] / static_cast<double>(samples) - exact[i]);
  tv *= 0.5;
  const double limit = 0.1 + 3.0 * std::sqrt(8.0 / (2.0 * static_cast<double>(samples)));
  return {tv <= limit, fmt("n=3, 10^4 samples: TV %.4f (limit %.4f)", tv, limit)};
}

// Hardcore path and clause-free formulas.
Outcome csp_checks() {
  const auto p4 = testing::hardcore_path(4);
  const double exact = oracle::exact_csp_partition(p4, 0.1).real();
  const auto rep = estimate_csp(p4, disc_region(0.2, 0.1), 0.1, 1e-3, 0.5, polynomial_zero_free_bound(2, 0.6, 0.0));
  const double p4_err = std::abs(rep.value / exact - 1.0);
  bool pass = p4_err <= 1e-3 && std::abs(exact - 1.43) <= 1e-12;
  double free_worst = 0.0;
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (std::size_t n = 1; n <= 10; ++n) {
    CspFormula f;
    f.n_vars = n;
    const cplx lambda(u(rng), u(rng));
    const auto r = estimate_csp(f, disc_region(0.5, lambda), lambda, 1e-7, 0.2, polynomial_zero_free_bound(n, 0.5, 0.0));
    free_worst = std::max(free_worst, std::abs(r.value / std::pow(1.0 + lambda, static_cast<double>(n)) - 1.0));
  }
  pass = pass && free_worst <= 1e-6;
  return {pass, fmt("P4 at 0.1: %.8f vs 1.43 (rel %.3g); free spins n <= 10: worst rel %.3g", rep.value.real(), p4_err,
                    free_worst)};
}

double segment_distance(cplx p, cplx b) {
  const double t = std::clamp((p * std::conj(b)).real() / std::norm(b), 0.0, 1.0);
  return std::abs(p - t * b);
}

// Strip polynomial: endpoints and containment of the image of the disc.
Outcome strip_map_checks() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double endpoint = 0.0, worst_ratio = 0.0;
  std::size_t violations = 0;
  for (int i = 0; i < 100; ++i) {
    const double delta = 0.1 + 0.85 * unit(rng);
    const double mag = 0.02 + (delta / 0.8 - 0.02) * unit(rng);
    const cplx beta = std::polar(mag, 2.0 * std::numbers::pi * unit(rng));
    const auto r = strip_map(beta, delta);
    endpoint = std::max({endpoint, std::abs(r.map(0.0)), std::abs(r.map(r.z_x) - beta) / std::abs(beta)});
    for (int a = 0; a < 40; ++a)
      for (int k = 0; k < 25; ++k) {
        const cplx z = std::polar((k + 1) / 25.0, 2.0 * std::numbers::pi * a / 40.0);
        const double d = segment_distance(r.map(z), beta);
        worst_ratio = std::max(worst_ratio, d / delta);
        violations += d >= delta;
      }
  }
  return {endpoint <= 1e-10 && violations == 0,
          fmt("100 maps: endpoint error %.3g; 10^5 grid points, %.0f outside the strip (max dist/delta %.3f)", endpoint,
              static_cast<double>(violations), worst_ratio)};
}

// Coefficient-engine wall time per vertex on hardcore models of growing size.
Outcome scaling() {
  std::mt19937_64 rng(808);
  std::vector<double> per_vertex;
  std::string detail;
  for (std::size_t n : {50u, 100u, 200u, 400u}) {
    const auto f = testing::hardcore(n, testing::random_sparse_edges(n, 3, rng));
    const auto g = to_dependency_graph(f);
    double best = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
      const auto t0 = Clock::now();
      const auto c = log_taylor(CspFamily(f), g, 4);
      best = std::min(best, seconds_since(t0));
      if (!std::isfinite(std::abs(c[4]))) return {false, "non-finite coefficient"};
    }
    per_vertex.push_back(best / static_cast<double>(n));
    detail += fmt("n=%.0f %.2fms ", static_cast<double>(n), best * 1e3);
  }
  const double ratio = *std::max_element(per_vertex.begin(), per_vertex.end()) /
                       *std::min_element(per_vertex.begin(), per_vertex.end());
  return {ratio <= 2.0, detail + fmt("; max/min t(n)/n = %.3f (limit 2)", ratio)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"C1 coefficient-engine oracle equivalence", coefficient_equivalence},
      {"C2 end-to-end estimator accuracy", estimator_accuracy},
      {"C3 zeta structural zeros", structural_zeros},
      {"C4 connected-subgraph enumeration", subgraph_enumeration},
      {"C5 sampler total variation", sampler_tv},
      {"C6 CSP hardcore and free spins", csp_checks},
      {"C7 strip map", strip_map_checks},
      {"C8 linear scaling", scaling},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failures += !out.pass;
    std::printf("%s %s: %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", name.c_str(), out.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
