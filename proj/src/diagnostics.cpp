#include "gma/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "gma/io/json_writer.hpp"

namespace gma::diag {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// splitmix64-style stream split, so each suite gets an independent seed
// derived deterministically from (master seed, stream index).
std::uint64_t subseed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (2 * stream + 1);
  s ^= s >> 30;
  s *= 0xbf58476d1ce4e5b9ULL;
  s ^= s >> 27;
  s *= 0x94d049bb133111ebULL;
  return s ^ (s >> 31);
}

void emit_laws(io::JsonWriter& w, const LawReport& report) {
  w.key("laws").begin_array();
  for (const LawCheck& c : report.checks()) {
    w.begin_object();
    w.field("law", c.law);
    w.field("max_defect", c.max_defect);
    w.field("tolerance", c.tolerance);
    w.field("trials", c.trials);
    w.field("worst_case", c.worst_case);
    w.field("passed", c.passed);
    w.end_object();
  }
  w.end_array();
}

}  // namespace

FitResult run_fit(const RegressionContextd& ctx, const Vecd& y,
                  const FitOptions& opt) {
  FitResult fit;
  fit.n = ctx.data_dim();
  fit.m = ctx.param_dim();
  fit.rank_margin = ctx.rank_margin();
  fit.lambda_max = gram_spectral_radius(ctx.design());

  const Vecd z = y - ctx.calibration();

  // Closed-form route.
  fit.certificate = closed_form(ctx, y);
  fit.a_star = fit.certificate.a_star;
  fit.r_perp = fit.certificate.r_perp;
  fit.stationarity = fit.certificate.grad_norm_at_limit;
  fit.stationarity_tol = 1e-9 * ctx.design().norm() * z.norm();
  fit.laws.record("ols.stationarity", fit.stationarity, fit.stationarity_tol);

  // Descent route.
  DescentConfigd cfg;
  cfg.eta = opt.eta;
  cfg.tol = opt.tol;
  cfg.max_iter = opt.max_iter;
  const DescentTraced trace = run_descent(ctx, y, cfg);
  fit.converged = trace.converged;
  fit.iterations = trace.iters;
  fit.eta = trace.eta;
  fit.tol = trace.tol;
  fit.final_grad_norm = trace.grad_norm_seq.back();
  fit.grad_norm_ref = trace.grad_norm_ref;
  fit.a_last = trace.a_seq.back();
  fit.distance_to_closed_form = (fit.a_last - fit.a_star).norm();

  const double convergence_defect =
      fit.grad_norm_ref > 0 ? fit.final_grad_norm / fit.grad_norm_ref
                            : fit.final_grad_norm;
  fit.laws.record("descent.convergence", convergence_defect, trace.tol);

  double residual_consistency = 0;
  for (Index k = 0; k < trace.size(); ++k) {
    residual_consistency = std::max(
        residual_consistency,
        max_norm_diff(trace.r_seq[k], Vecd(z - ctx.design() * trace.a_seq[k])));
  }
  fit.laws.record("descent.residual_consistency", residual_consistency,
                  kLinearLawTol);

  // Cone and terminal-object laws over the recorded trace.
  fit.laws.merge(check_cone(trace, ctx, y));
  fit.laws.merge(check_terminal(trace, ctx, y));

  // RAPL certificate; only meaningful at convergence.
  if (fit.converged) {
    fit.certificate = check_rapl(trace, ctx, y);
    const double bound =
        fit.certificate.tolerance * (1.0 + fit.certificate.a_star.norm());
    fit.laws.record("rapl.limit_of_images", fit.certificate.rapl_defect, bound);
    fit.laws.record("rapl.image_of_limit", fit.certificate.image_of_limit,
                    bound);
    fit.laws.record("rapl.reconstruction",
                    fit.certificate.reconstruction_defect, bound);
  } else {
    fit.certificate.rapl_defect = kNaN;
    fit.certificate.image_of_limit = kNaN;
    fit.certificate.reconstruction_defect = kNaN;
    fit.certificate.terminal_defect = kNaN;
    fit.certificate.tolerance = kLimitTolFactor * trace.tol;
    fit.certificate.passed = false;
  }

  // Randomized algebraic suites against this context.
  fit.laws.merge(check_category_laws(opt.trials, fit.m, fit.n,
                                     subseed(opt.seed, 1)));
  fit.laws.merge(check_functor_laws(ctx, opt.trials, subseed(opt.seed, 2)));
  fit.laws.merge(check_adjunction_laws(ctx, opt.trials, subseed(opt.seed, 3),
                                       opt.adjunction));

  // Materialized witness at the descent start (a_1 = 0).
  const PrmObjectd a1(Vecd::Zero(fit.m));
  const DataObjectd yobj(y);
  const AdjunctionWitnessd w = make_witness(ctx, a1, yobj);
  fit.witness_delta_r = w.delta_r.delta();
  fit.witness_delta_alpha = w.delta_alpha.delta();
  fit.witness_unit = w.unit_at_a.delta();
  fit.witness_counit = w.counit_at_y.delta();

  fit.passed = fit.laws.all_passed() && fit.converged;
  return fit;
}

LawcheckResult run_lawcheck(const LawcheckOptions& opt) {
  if (opt.trials < 1)
    throw std::invalid_argument("run_lawcheck: trials >= 1");
  LawcheckResult res;
  res.options = opt;
  Sampler sampler(subseed(opt.seed, 0));
  for (long t = 0; t < opt.trials; ++t) {
    const RegressionContextd ctx =
        sample_context(sampler, opt.max_n, opt.max_m, true);
    res.laws.merge(check_category_laws(opt.samples_per_context,
                                       ctx.param_dim(), ctx.data_dim(),
                                       subseed(opt.seed, 3 * t + 1)));
    res.laws.merge(check_functor_laws(ctx, opt.samples_per_context,
                                      subseed(opt.seed, 3 * t + 2)));
    res.laws.merge(check_adjunction_laws(ctx, opt.samples_per_context,
                                         subseed(opt.seed, 3 * t + 3),
                                         opt.adjunction));
  }
  res.passed = res.laws.all_passed();
  return res;
}

std::string fit_report_json(const FitResult& fit, std::uint64_t seed) {
  io::JsonWriter w;
  w.begin_object();
  w.field("tool", "gma");
  w.field("version", "0.1.0");
  w.field("command", "fit");
  w.field("seed", static_cast<long>(seed));

  w.key("context").begin_object();
  w.field("n", fit.n);
  w.field("m", fit.m);
  w.field("rank_margin", fit.rank_margin);
  w.field("lambda_max", fit.lambda_max);
  w.end_object();

  w.key("ols").begin_object();
  w.field("a_star", fit.a_star);
  w.field("r_perp", fit.r_perp);
  w.field("stationarity", fit.stationarity);
  w.field("stationarity_tol", fit.stationarity_tol);
  w.end_object();

  w.key("descent").begin_object();
  w.field("converged", fit.converged);
  w.field("iterations", fit.iterations);
  w.field("eta", fit.eta);
  w.field("tol", fit.tol);
  w.field("final_grad_norm", fit.final_grad_norm);
  w.field("grad_norm_ref", fit.grad_norm_ref);
  w.field("a_last", fit.a_last);
  w.field("distance_to_closed_form", fit.distance_to_closed_form);
  w.end_object();

  w.key("adjunction").begin_object();
  w.field("delta_r", fit.witness_delta_r);
  w.field("delta_alpha", fit.witness_delta_alpha);
  w.field("unit", fit.witness_unit);
  w.field("counit", fit.witness_counit);
  w.end_object();

  w.key("limit").begin_object();
  w.field("rapl_defect", fit.certificate.rapl_defect);
  w.field("image_of_limit", fit.certificate.image_of_limit);
  w.field("reconstruction_defect", fit.certificate.reconstruction_defect);
  w.field("terminal_defect", fit.certificate.terminal_defect);
  w.field("grad_norm_at_limit", fit.certificate.grad_norm_at_limit);
  w.field("tolerance", fit.certificate.tolerance);
  w.field("passed", fit.certificate.passed);
  w.end_object();

  emit_laws(w, fit.laws);
  w.field("passed", fit.passed);
  w.end_object();
  return w.str() + "\n";
}

std::string lawcheck_report_json(const LawcheckResult& res) {
  io::JsonWriter w;
  w.begin_object();
  w.field("tool", "gma");
  w.field("version", "0.1.0");
  w.field("command", "lawcheck");
  w.field("seed", static_cast<long>(res.options.seed));
  w.field("trials", res.options.trials);
  w.field("max_n", res.options.max_n);
  w.field("max_m", res.options.max_m);
  w.field("samples_per_context", res.options.samples_per_context);
  emit_laws(w, res.laws);
  w.field("passed", res.passed);
  w.end_object();
  return w.str() + "\n";
}

void write_trace_csv(std::ostream& os, const DescentTraced& trace,
                     const RegressionContextd& ctx, const Vecd& y) {
  const Vecd z = y - ctx.calibration();
  const Vecd a_star = ctx.left_inv() * z;
  const Vecd r_perp = z - ctx.design() * a_star;
  const auto fmt = io::JsonWriter::format_double;

  os << "# converged=" << (trace.converged ? "true" : "false")
     << " iterations=" << trace.iters << " eta=" << fmt(trace.eta)
     << " tol=" << fmt(trace.tol) << "\n";
  os << "i,loss,grad_norm,dist_to_ols,dist_to_min_residual\n";
  for (Index k = 0; k < trace.size(); ++k) {
    os << trace.index[k] << ',' << fmt(trace.loss_seq[k]) << ','
       << fmt(trace.grad_norm_seq[k]) << ','
       << fmt((trace.a_seq[k] - a_star).norm()) << ','
       << fmt((trace.r_seq[k] - r_perp).norm()) << "\n";
  }
}

}  // namespace gma::diag
