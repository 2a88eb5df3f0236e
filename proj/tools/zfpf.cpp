// Copyright 2026 The zfpf Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// zfpf: command-line front end. Reads models as JSON, writes one JSON report.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zfpf/io.hpp"
#include "zfpf/zfpf.hpp"

namespace {

using zfpf::cplx;
using zfpf::io::json;

struct RunConfig {
  std::string input;
  std::string measurement = "identity";
  std::string beta = "0";
  double epsilon = 1e-3;
  double delta = 0.1;
  std::optional<double> M;
  std::string region = "auto";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  std::size_t order = 6;
};

cplx parse_point(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::logic_error&) {
    throw zfpf::InputError("expected RE or RE,IM but got \"" + text + "\"");
  }
}

double parse_positive(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && v > 0.0) return v;
  } catch (const std::logic_error&) {
  }
  throw zfpf::InputError(what + " must be a positive number, got \"" + text + "\"");
}

std::size_t matrix_cap() {
  const char* env = std::getenv("ZFPF_MATRIX_CAP");
  if (!env || !*env) return zfpf::kDefaultDpMatrixCap;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
  }
  throw zfpf::InputError("ZFPF_MATRIX_CAP must be a positive integer");
}

/// Region for a query x: "disc:B" or "strip:W" (half-width W around [0, x]).
/// Returns the region and the interior margin delta to use with it.
std::pair<zfpf::GoodRegion, double> parse_region(const RunConfig& cfg, cplx x, std::vector<std::string>& warnings) {
  const std::string& spec = cfg.region;
  if (spec.rfind("disc:", 0) == 0) return {zfpf::disc_region(parse_positive(spec.substr(5), "disc radius"), x), cfg.delta};
  if (spec.rfind("strip:", 0) == 0) {
    auto region = zfpf::strip_map(x, parse_positive(spec.substr(6), "strip half-width"));
    const double margin = 1.0 - std::abs(region.z_x);
    warnings.push_back("strip region fixes the interior margin delta to " + std::to_string(margin));
    return {std::move(region), margin};
  }
  throw zfpf::InputError("--region must be auto, disc:B or strip:W (got \"" + spec + "\")");
}

json report(const std::string& command, const zfpf::EstimateReport& r, std::optional<double> b0,
            const std::vector<std::string>& warnings) {
  json j;
  j["command"] = command;
  j["value"] = zfpf::io::to_json(r.value);
  j["log_value"] = zfpf::io::to_json(r.log_value);
  j["order_m"] = r.order;
  j["truncation_bound"] = r.truncation_bound;
  j["beta0"] = b0 ? json(*b0) : json(nullptr);
  j["elapsed_ms"] = r.elapsed_ms;
  j["warnings"] = warnings;
  return j;
}

bool is_csp(const json& model) { return model.is_object() && model.contains("clauses"); }

zfpf::TensorizedMeasurement load_measurement(const RunConfig& cfg, const zfpf::Hamiltonian& h) {
  if (cfg.measurement == "identity") return zfpf::TensorizedMeasurement::identity();
  return zfpf::io::parse_measurement(zfpf::io::read_file(cfg.measurement), h.n_sites, h.q);
}

void check_accuracy_args(const RunConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw zfpf::DomainError("--epsilon must lie in (0,1)");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw zfpf::DomainError("--delta must lie in (0,1)");
}

json run_estimate(const RunConfig& cfg) {
  check_accuracy_args(cfg);
  const json model = zfpf::io::read_file(cfg.input);
  if (is_csp(model)) throw zfpf::InputError("input is a CSP formula; use csp-estimate");
  const auto h = zfpf::io::parse_hamiltonian(model);
  const auto o = load_measurement(cfg, h);
  const cplx beta = parse_point(cfg.beta);
  zfpf::QuantumOptions opts;
  opts.engine.threads = cfg.threads;
  opts.matrix_cap = matrix_cap();
  std::vector<std::string> warnings;
  zfpf::PartitionReport rep;
  if (cfg.region == "auto") {
    if (cfg.M) warnings.push_back("--M is ignored with the auto region (M = n)");
    rep = zfpf::estimate_partition(h, o, beta, cfg.epsilon, cfg.delta, opts);
  } else {
    if (!cfg.M) throw zfpf::InputError("--M is required with an explicit --region");
    auto [region, margin] = parse_region(cfg, beta, warnings);
    warnings.push_back("zero-freeness bound M is assumed, not verified");
    rep = zfpf::estimate_partition(h, o, region, beta, cfg.epsilon, margin, *cfg.M, opts);
  }
  return report("estimate", rep.estimate, rep.beta0, warnings);
}

json run_csp_estimate(const RunConfig& cfg) {
  check_accuracy_args(cfg);
  const json model = zfpf::io::read_file(cfg.input);
  const auto f = zfpf::io::parse_csp(model);
  if (cfg.region == "auto") throw zfpf::InputError("csp-estimate needs an explicit --region (no default zero-free region)");
  if (!cfg.M) throw zfpf::InputError("csp-estimate requires --M");
  const cplx lambda = parse_point(cfg.beta);
  std::vector<std::string> warnings;
  auto [region, margin] = parse_region(cfg, lambda, warnings);
  warnings.push_back("zero-freeness bound M is assumed, not verified");
  zfpf::EngineOptions opts{cfg.threads};
  const auto rep = zfpf::estimate_csp(f, region, lambda, cfg.epsilon, margin, *cfg.M, opts);
  return report("csp-estimate", rep, std::nullopt, warnings);
}

json run_oracle(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const json model = zfpf::io::read_file(cfg.input);
  const cplx x = parse_point(cfg.beta);
  zfpf::EstimateReport rep;
  std::optional<double> b0;
  if (is_csp(model)) {
    rep.value = zfpf::oracle::exact_csp_partition(zfpf::io::parse_csp(model), x);
  } else {
    const auto h = zfpf::io::parse_hamiltonian(model);
    const auto o = load_measurement(cfg, h);
    const double norm = zfpf::max_term_norm(h);
    if (norm > 0.0) b0 = zfpf::beta0(static_cast<double>(h.k), static_cast<double>(h.d), norm);
    rep.value = zfpf::oracle::exact_partition(h, o, x);
  }
  rep.log_value = std::log(rep.value);
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report("oracle", rep, b0, {});
}

json run_coeffs(const RunConfig& cfg) {
  if (cfg.order == 0) throw zfpf::DomainError("--order must be at least 1");
  const json model = zfpf::io::read_file(cfg.input);
  zfpf::EngineOptions opts{cfg.threads};
  zfpf::TaylorSeries series;
  if (is_csp(model)) {
    const auto f = zfpf::io::parse_csp(model);
    series = zfpf::log_taylor(zfpf::CspFamily(f), zfpf::to_dependency_graph(f), cfg.order, opts);
  } else {
    const auto h = zfpf::io::parse_hamiltonian(model);
    const auto o = load_measurement(cfg, h);
    series = zfpf::log_taylor(zfpf::QuantumFamily(h, o, matrix_cap()), zfpf::to_dependency_graph(h), cfg.order, opts);
  }
  return zfpf::io::series_to_json(series);
}

json run_sample(const RunConfig& cfg) {
  check_accuracy_args(cfg);
  const cplx beta = parse_point(cfg.beta);
  if (beta.imag() != 0.0) throw zfpf::OutOfRegimeError("sample needs a real --beta");
  const auto h = zfpf::io::parse_hamiltonian(zfpf::io::read_file(cfg.input));
  zfpf::QuantumOptions opts;
  opts.engine.threads = cfg.threads;
  opts.matrix_cap = matrix_cap();
  const auto s = zfpf::sample_gibbs(h, beta.real(), cfg.epsilon, cfg.seed, cfg.delta, opts);
  return {{"sigma", s.sigma}, {"seed", cfg.seed}};
}

void emit(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw zfpf::InputError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic approximation of zero-free partition functions"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto common = [&cfg](CLI::App* sub, bool accuracy) {
    sub->add_option("--input", cfg.input, "model JSON (Hamiltonian or CSP)")->required();
    sub->add_option("--threads", cfg.threads, "worker threads for the coefficient engine")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    if (accuracy) {
      sub->add_option("--epsilon", cfg.epsilon, "multiplicative error target in (0,1)");
      sub->add_option("--delta", cfg.delta, "interior margin in (0,1)");
    }
  };

  auto* estimate = app.add_subcommand("estimate", "approximate Tr[exp(-beta H) O]");
  common(estimate, true);
  estimate->add_option("--measurement", cfg.measurement, "measurement JSON or 'identity'");
  estimate->add_option("--beta", cfg.beta, "inverse temperature RE or RE,IM");
  estimate->add_option("--M", cfg.M, "zero-freeness bound (required for explicit regions)");
  estimate->add_option("--region", cfg.region, "auto | disc:B | strip:W");

  auto* csp = app.add_subcommand("csp-estimate", "approximate a CSP partition function Z(lambda)");
  common(csp, true);
  csp->add_option("--beta,--lambda", cfg.beta, "external field RE or RE,IM");
  csp->add_option("--M", cfg.M, "zero-freeness bound on the region")->required();
  csp->add_option("--region", cfg.region, "disc:B | strip:W");

  auto* oracle = app.add_subcommand("oracle", "exact value by dense enumeration");
  common(oracle, false);
  oracle->add_option("--measurement", cfg.measurement, "measurement JSON or 'identity'");
  oracle->add_option("--beta,--lambda", cfg.beta, "evaluation point RE or RE,IM");

  auto* coeffs = app.add_subcommand("coeffs", "Taylor coefficients of log f at the origin");
  common(coeffs, false);
  coeffs->add_option("--measurement", cfg.measurement, "measurement JSON or 'identity'");
  coeffs->add_option("--order", cfg.order, "truncation order m");

  auto* sample = app.add_subcommand("sample", "one computational-basis Gibbs sample");
  common(sample, true);
  sample->add_option("--beta", cfg.beta, "real inverse temperature");
  sample->add_option("--seed", cfg.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    json result;
    if (*estimate) result = run_estimate(cfg);
    else if (*csp) result = run_csp_estimate(cfg);
    else if (*oracle) result = run_oracle(cfg);
    else if (*coeffs) result = run_coeffs(cfg);
    else result = run_sample(cfg);
    emit(result, cfg.out);
    return 0;
  } catch (const zfpf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 4;
  }
}
