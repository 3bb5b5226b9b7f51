/*
 * Copyright 2026 The vfbm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// vfbm command-line entry point.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vfbm/covariance.hpp"
#include "vfbm/error.hpp"
#include "vfbm/io.hpp"
#include "vfbm/repr.hpp"
#include "vfbm/simulate.hpp"
#include "vfbm/verify.hpp"

namespace {

using vfbm::Error;
using vfbm::ErrorCode;
using vfbm::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::IOError:
    case ErrorCode::ConfigError:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

void report_error(std::string_view code, std::string_view message,
                  const Json& extra = Json::object()) {
  Json j = {{"error", code}, {"message", message}};
  j.update(extra);
  std::cerr << j.dump() << '\n';
}

// Writes to `out`, or stdout when the path is empty.
void emit(const std::string& out, const std::string& content) {
  if (out.empty()) {
    std::cout << content;
  } else {
    vfbm::io::write_file_atomic(out, content);
  }
}

int run_validate(const std::string& model_path, const std::string& out) {
  const auto loaded = vfbm::io::parse_model(vfbm::io::read_json(model_path));
  const vfbm::ValidationReport rep = vfbm::validate_model(loaded.model);
  Json issues = Json::array();
  for (const auto& issue : rep.regime_issues) {
    issues.push_back({{"i", issue.i + 1},
                      {"j", issue.j + 1},
                      {"expected", vfbm::to_string(issue.expected)},
                      {"supplied", vfbm::to_string(issue.supplied)}});
  }
  const Json j = {{"report", rep.pass() ? "pass" : "fail"},
                  {"symmetric", rep.symmetric},
                  {"symmetry_error", rep.symmetry_error},
                  {"positive_definite", rep.positive_definite},
                  {"lambda_min", rep.lambda_min},
                  {"lambda_max", rep.lambda_max},
                  {"regime_issues", issues}};
  emit(out, j.dump(2) + "\n");
  if (rep.pass()) return kExitOk;
  if (!rep.regime_issues.empty()) {
    report_error(vfbm::to_string(ErrorCode::RegimeMismatch), "pair regime does not match exponents");
  } else {
    report_error(vfbm::to_string(ErrorCode::NotPositiveDefinite),
                 "correlation matrix is not symmetric positive definite",
                 {{"lambda_min", rep.lambda_min}});
  }
  return kExitFailure;
}

int run_coeffs(const std::string& mixing_path, const std::string& out) {
  const auto mix = vfbm::io::parse_mixing(vfbm::io::read_json(mixing_path));
  const vfbm::CovarianceModel model = vfbm::coeffs_from_mixing(mix);
  emit(out, vfbm::io::model_to_json(model).dump(2) + "\n");
  return kExitOk;
}

int run_cov(const std::string& model_path, const std::string& grid_text,
            const std::string& out) {
  const auto grid = vfbm::io::parse_grid(grid_text);
  const auto loaded = vfbm::io::parse_model(vfbm::io::read_json(model_path));
  vfbm::ensure_valid(loaded.model);
  const vfbm::CovMatrix c = vfbm::cov_matrix(loaded.model, grid);
  std::ostringstream os;
  vfbm::io::write_cov_csv(os, c);
  emit(out, os.str());
  return kExitOk;
}

int run_factorize(const std::string& c_tilde_path, const std::string& hurst_text,
                  const std::string& out) {
  const Json doc = vfbm::io::read_json(c_tilde_path);
  Eigen::MatrixXd c;
  std::vector<double> h;
  if (doc.is_array()) {
    c = vfbm::io::matrix_from_json(doc, "c_tilde");
  } else if (doc.is_object() && doc.contains("c_tilde")) {
    c = vfbm::io::matrix_from_json(doc.at("c_tilde"), "c_tilde");
    if (doc.contains("hurst")) {
      if (!doc.at("hurst").is_array()) {
        throw Error(ErrorCode::ParseError, "\"hurst\" must be an array of numbers");
      }
      for (const auto& v : doc.at("hurst")) {
        if (!v.is_number()) throw Error(ErrorCode::ParseError, "\"hurst\" must be an array of numbers");
        h.push_back(v.get<double>());
      }
    }
  } else {
    throw Error(ErrorCode::ParseError, "expected a matrix or an object with \"c_tilde\"");
  }
  if (!hurst_text.empty()) h = vfbm::io::parse_list(hurst_text);
  if (h.empty()) throw Error(ErrorCode::ConfigError, "Hurst exponents required (--hurst or \"hurst\")");
  if (static_cast<std::size_t>(c.rows()) != h.size() || c.rows() != c.cols()) {
    throw Error(ErrorCode::ParseError, "c_tilde must be square with one row per exponent");
  }
  const vfbm::HurstVector hv = vfbm::validate_hurst(h);
  const vfbm::FactorizeResult fr = vfbm::causal_factorize({c}, hv);
  if (!fr.feasible()) {
    report_error(vfbm::to_string(ErrorCode::Infeasible),
                 "no causal factorization exists",
                 {{"reason", vfbm::to_string(fr.reason)}, {"statistic", fr.statistic}});
    return kExitFailure;
  }
  emit(out, vfbm::io::mixing_to_json(*fr.mixing).dump(2) + "\n");
  return kExitOk;
}

int run_simulate(const std::string& model_path, const std::string& grid_text,
                 std::size_t n, std::uint64_t seed, const std::string& out) {
  const auto grid = vfbm::io::parse_grid(grid_text);
  const auto loaded = vfbm::io::parse_model(vfbm::io::read_json(model_path));
  vfbm::ensure_valid(loaded.model);
  const vfbm::PathEnsemble e = vfbm::sample_paths(loaded.model, grid, n, seed);
  std::ostringstream os;
  vfbm::io::write_paths_csv(os, e);
  emit(out, os.str());
  return kExitOk;
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& out) {
  const auto checks = vfbm::verify::run_suite(suite, seed);
  Json arr = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    arr.push_back({{"check", c.name},
                   {"statistic", c.statistic},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
  }
  const Json j = {{"suite", suite}, {"seed", seed}, {"pass", all}, {"checks", arr}};
  emit(out, j.dump(2) + "\n");
  if (!all) {
    report_error("VerificationFailed", "one or more checks failed", {{"suite", suite}});
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector fractional Brownian motion: covariance, representation, simulation"};
  app.require_subcommand(1);

  std::string model, mixing, grid, out, c_tilde, hurst, suite = "all";
  std::size_t n = 1000;
  std::uint64_t seed = 1;

  auto* validate = app.add_subcommand("validate", "Check a covariance model for existence conditions");
  validate->add_option("--model", model, "Model JSON")->required()->check(CLI::ExistingFile);
  validate->add_option("--out", out, "Report JSON (default stdout)");

  auto* coeffs = app.add_subcommand("coeffs", "Covariance coefficients from mixing matrices");
  coeffs->add_option("--mixing,--model", mixing, "Mixing-matrix JSON")
      ->required()->check(CLI::ExistingFile);
  coeffs->add_option("--out", out, "Model JSON (default stdout)");

  auto* cov = app.add_subcommand("cov", "Covariance matrix on a time grid");
  cov->add_option("--model", model, "Model JSON")->required()->check(CLI::ExistingFile);
  cov->add_option("--grid", grid, "Comma-separated times")->required();
  cov->add_option("--out", out, "CSV (default stdout)");

  auto* factorize = app.add_subcommand("factorize", "Causal mixing matrices from c~");
  factorize->add_option("--c-tilde", c_tilde, "Matrix JSON or {c_tilde, hurst}")
      ->required()->check(CLI::ExistingFile);
  factorize->add_option("--hurst", hurst, "Comma-separated exponents");
  factorize->add_option("--out", out, "Mixing JSON (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Exact Gaussian paths on a grid");
  simulate->add_option("--model", model, "Model JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--grid", grid, "Comma-separated times")->required();
  simulate->add_option("--n", n, "Number of paths")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Random seed");
  simulate->add_option("--out", out, "CSV (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run oracle consistency checks");
  std::vector<std::string> names;
  for (auto s : vfbm::verify::suite_names()) names.emplace_back(s);
  verify->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(names));
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--out", out, "Report JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", e.what());
    return kExitUsage;
  }

  try {
    if (*validate) return run_validate(model, out);
    if (*coeffs) return run_coeffs(mixing, out);
    if (*cov) return run_cov(model, grid, out);
    if (*factorize) return run_factorize(c_tilde, hurst, out);
    if (*simulate) return run_simulate(model, grid, n, seed, out);
    if (*verify) return run_verify(suite, seed, out);
  } catch (const Error& e) {
    report_error(vfbm::to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    report_error("InternalError", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
