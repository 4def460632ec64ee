#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "gma/gma.hpp"

namespace gma::diag {

// ---------------------------------------------------------------------------
// Fit: one dataset, both solution routes, the full law suite.
// ---------------------------------------------------------------------------

struct FitOptions {
  std::optional<double> eta;  // empty selects 1 / lambda_max
  double tol = 1e-10;
  long max_iter = 1000000;
  std::uint64_t seed = 0;
  long trials = 100;  // samples for the randomized law suites
  AdjunctionCheckOptions adjunction{};
};

struct FitResult {
  // Context summary.
  Index n = 0;
  Index m = 0;
  double rank_margin = 0;
  double lambda_max = 0;

  // Closed-form route.
  Vecd a_star;
  Vecd r_perp;
  double stationarity = 0;      // ||X^T r_perp||_2
  double stationarity_tol = 0;  // 1e-9 * ||X||_F * ||z||_2

  // Descent route.
  bool converged = false;
  long iterations = 0;
  double eta = 0;
  double tol = 0;
  double final_grad_norm = 0;
  double grad_norm_ref = 0;
  Vecd a_last;
  double distance_to_closed_form = 0;  // ||a_last - a_star||_2

  // Adjunction witness at (a_1, y).
  Vecd witness_delta_r;
  Vecd witness_delta_alpha;
  Vecd witness_unit;
  Vecd witness_counit;

  // Limit certificate; rapl fields are NaN when descent did not converge.
  LimitCertificated certificate;

  LawReport laws;
  bool passed = false;
};

/// Fits by closed form and by descent, cross-validates them, and runs every
/// law suite (category, functor, adjunction, cone, terminal, RAPL) against
/// this context. Never throws on law failures or non-convergence; those are
/// report content.
FitResult run_fit(const RegressionContextd& ctx, const Vecd& y,
                  const FitOptions& opt);

// ---------------------------------------------------------------------------
// Lawcheck: batch law suites over random contexts.
// ---------------------------------------------------------------------------

struct LawcheckOptions {
  long trials = 50;  // number of random contexts
  std::uint64_t seed = 0;
  Index max_n = 12;
  Index max_m = 6;
  long samples_per_context = 5;
  AdjunctionCheckOptions adjunction{};
};

struct LawcheckResult {
  LawcheckOptions options;
  LawReport laws;
  bool passed = false;
};

LawcheckResult run_lawcheck(const LawcheckOptions& opt);

// ---------------------------------------------------------------------------
// Emission.
// ---------------------------------------------------------------------------

/// Single-line JSON documents with stable key order and 17-significant-digit
/// doubles: identical inputs produce byte-identical bytes.
std::string fit_report_json(const FitResult& fit, std::uint64_t seed);
std::string lawcheck_report_json(const LawcheckResult& res);

/// Per-iteration CSV: i, loss, grad_norm, dist_to_ols, dist_to_min_residual,
/// preceded by `#` comment lines carrying convergence metadata.
void write_trace_csv(std::ostream& os, const DescentTraced& trace,
                     const RegressionContextd& ctx, const Vecd& y);

}  // namespace gma::diag
