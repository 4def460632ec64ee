#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gma/errors.hpp"
#include "gma/functors.hpp"
#include "gma/law_report.hpp"
#include "gma/numlin.hpp"
#include "gma/types.hpp"

namespace gma {

/// Factor applied to the descent tolerance when certifying the limit
/// identities (the certificate bounds are looser than the stop test).
inline constexpr double kLimitTolFactor = 100.0;

// ---------------------------------------------------------------------------
// Configuration and trace.
//
// The objective is L(a) = 1/2 ||z - X a||^2 with z = y - b: a nonzero
// calibration is folded into the data up front, so the recurrences
//     a_{i+1} = a_i + eta X^T r_i,       r_{i+1} = r_i - eta X X^T r_i
// apply verbatim, and every reported residual is a residual of z.
// ---------------------------------------------------------------------------

template <class Scalar>
struct DescentConfig {
  /// Step size; empty selects 1 / lambda_max(X X^T). Must satisfy
  /// 0 < eta < 2 / lambda_max.
  std::optional<Scalar> eta{};
  /// Stop when ||X^T r_i|| <= tol * ||X^T z||.
  Scalar tol = Scalar(1e-10);
  long max_iter = 1000000;
  /// Initial parameter a_1; empty selects the zero vector.
  std::optional<Vec<Scalar>> a_init{};
  /// Cap on recorded states; beyond it the recording stride doubles.
  long record_cap = 100000;
};

using DescentConfigd = DescentConfig<double>;

/// The recorded orbit of one descent run. `index[k]` is the 1-based
/// iteration number of record k; strides stay 1 until `record_cap` is hit.
/// Invariant: r_seq[k] = z - X a_seq[k] to rounding for every record.
template <class Scalar>
struct DescentTrace {
  std::vector<long> index;
  std::vector<Vec<Scalar>> a_seq;
  std::vector<Vec<Scalar>> r_seq;
  std::vector<Scalar> loss_seq;
  std::vector<Scalar> grad_norm_seq;  // ||X^T r_i||_2
  bool converged = false;
  long iters = 0;  // total states visited, recorded or not
  Scalar eta{};
  Scalar tol{};
  Scalar grad_norm_ref{};  // ||X^T z||_2, the convergence reference

  Index size() const { return static_cast<Index>(index.size()); }
};

using DescentTraced = DescentTrace<double>;

/// Closed-form limit data plus the measured defects of the limit
/// identities. Produced by closed_form (trace-dependent defects zero) and
/// by check_rapl (all fields measured against a trace).
template <class Scalar>
struct LimitCertificate {
  Vec<Scalar> a_star;              // G z: the least-squares estimate
  Vec<Scalar> r_perp;              // (I - P) z: the minimum residual
  Scalar grad_norm_at_limit{};     // ||X^T r_perp||
  Scalar rapl_defect{};            // ||G z - a_last||  (limit of the images)
  Scalar image_of_limit{};         // ||G r_last||      (image of the limit)
  Scalar reconstruction_defect{};  // ||G(z - r_last) - a_star||
  Scalar terminal_defect{};        // worst cone-factorization defect
  Scalar tolerance{};              // threshold the defects were held to
  bool passed = true;
};

using LimitCertificated = LimitCertificate<double>;

template <class Scalar>
struct DescentStep {
  Vec<Scalar> a_next;
  Vec<Scalar> r_next;
};

// ---------------------------------------------------------------------------
// Core iteration.
// ---------------------------------------------------------------------------

namespace detail {

template <class Scalar>
Vec<Scalar> folded_data(const RegressionContext<Scalar>& ctx,
                        const Vec<Scalar>& y) {
  if (y.size() != ctx.data_dim())
    throw DimensionError("descent: y dim != data_dim");
  return y - ctx.calibration();
}

}  // namespace detail

/// Gradient of the objective at a: -X^T (z - X a).
template <class Scalar>
Vec<Scalar> gradient(const RegressionContext<Scalar>& ctx, const Vec<Scalar>& a,
                     const Vec<Scalar>& y) {
  if (a.size() != ctx.param_dim())
    throw DimensionError("gradient: a dim != param_dim");
  const Vec<Scalar> z = detail::folded_data(ctx, y);
  return -(ctx.design().transpose() * (z - ctx.design() * a)).eval();
}

/// One descent step: runs both recurrences from a_i (residual computed as
/// r_i = z - X a_i). The returned pair stays mutually consistent:
/// r_next = z - X a_next up to rounding.
template <class Scalar>
DescentStep<Scalar> descent_step(const RegressionContext<Scalar>& ctx,
                                 const Vec<Scalar>& a_i, const Vec<Scalar>& y,
                                 Scalar eta) {
  if (a_i.size() != ctx.param_dim())
    throw DimensionError("descent_step: a dim != param_dim");
  const Vec<Scalar> z = detail::folded_data(ctx, y);
  const Vec<Scalar> r_i = z - ctx.design() * a_i;
  const Vec<Scalar> xtr = ctx.design().transpose() * r_i;
  DescentStep<Scalar> out;
  out.a_next = a_i + eta * xtr;
  out.r_next = r_i - eta * (ctx.design() * xtr);
  return out;
}

/// Runs gradient descent until ||X^T r_i|| <= tol * ||X^T z|| or max_iter.
/// Throws StepSizeError if eta is outside (0, 2 / lambda_max(X X^T));
/// a max_iter exit is not an error: the trace comes back flagged
/// converged = false.
template <class Scalar>
DescentTrace<Scalar> run_descent(const RegressionContext<Scalar>& ctx,
                                 const Vec<Scalar>& y,
                                 const DescentConfig<Scalar>& cfg) {
  if (cfg.max_iter < 1) throw std::invalid_argument("run_descent: max_iter >= 1");
  if (!(cfg.tol > Scalar(0))) throw std::invalid_argument("run_descent: tol > 0");
  const Vec<Scalar> z = detail::folded_data(ctx, y);

  const Scalar lambda_max = gram_spectral_radius(ctx.design());
  const Scalar eta = cfg.eta.value_or(Scalar(1) / lambda_max);
  if (!(eta > Scalar(0)) || !(eta < Scalar(2) / lambda_max))
    throw StepSizeError("run_descent: eta = " + std::to_string(eta) +
                        " outside (0, " + std::to_string(2.0 / lambda_max) + ")");

  Vec<Scalar> a = cfg.a_init.value_or(Vec<Scalar>::Zero(ctx.param_dim()));
  if (a.size() != ctx.param_dim())
    throw DimensionError("run_descent: a_init dim != param_dim");

  DescentTrace<Scalar> trace;
  trace.eta = eta;
  trace.tol = cfg.tol;
  trace.grad_norm_ref = (ctx.design().transpose() * z).norm();
  const Scalar stop = cfg.tol * trace.grad_norm_ref;
  const long cap = std::max<long>(2, cfg.record_cap);

  long stride = 1;
  auto record = [&](long i, const Vec<Scalar>& ai, const Vec<Scalar>& ri,
                    Scalar grad_norm, bool final_state) {
    trace.index.push_back(i);
    trace.a_seq.push_back(ai);
    trace.r_seq.push_back(ri);
    trace.loss_seq.push_back(Scalar(0.5) * ri.squaredNorm());
    trace.grad_norm_seq.push_back(grad_norm);
    // A final record must survive; thinning only follows regular records.
    if (!final_state && static_cast<long>(trace.index.size()) >= cap) {
      // Thin to every other record and double the stride.
      std::size_t keep = 0;
      for (std::size_t k = 0; k < trace.index.size(); k += 2, ++keep) {
        trace.index[keep] = trace.index[k];
        trace.a_seq[keep] = trace.a_seq[k];
        trace.r_seq[keep] = trace.r_seq[k];
        trace.loss_seq[keep] = trace.loss_seq[k];
        trace.grad_norm_seq[keep] = trace.grad_norm_seq[k];
      }
      trace.index.resize(keep);
      trace.a_seq.resize(keep);
      trace.r_seq.resize(keep);
      trace.loss_seq.resize(keep);
      trace.grad_norm_seq.resize(keep);
      stride *= 2;
    }
  };

  Vec<Scalar> r(ctx.data_dim());
  Vec<Scalar> xtr(ctx.param_dim());
  for (long i = 1; i <= cfg.max_iter; ++i) {
    r.noalias() = z - ctx.design() * a;
    xtr.noalias() = ctx.design().transpose() * r;
    const Scalar grad_norm = xtr.norm();
    const bool done = grad_norm <= stop;
    const bool last = done || i == cfg.max_iter;
    trace.iters = i;
    if ((i - 1) % stride == 0 || last) record(i, a, r, grad_norm, last);
    if (done) {
      trace.converged = true;
      break;
    }
    a += eta * xtr;
  }
  return trace;
}

/// The limit in closed form: a* = G z and r_perp = (I - P) z, with the
/// stationarity residual ||X^T r_perp|| measured.
template <class Scalar>
LimitCertificate<Scalar> closed_form(const RegressionContext<Scalar>& ctx,
                                     const Vec<Scalar>& y) {
  const Vec<Scalar> z = detail::folded_data(ctx, y);
  LimitCertificate<Scalar> cert;
  cert.a_star = ctx.left_inv() * z;
  cert.r_perp = z - ctx.design() * cert.a_star;
  cert.grad_norm_at_limit = (ctx.design().transpose() * cert.r_perp).norm();
  return cert;
}

// ---------------------------------------------------------------------------
// Cone, terminal object, and limit preservation.
// ---------------------------------------------------------------------------

/// Commutativity of the descent cone. For every recorded consecutive pair
/// (iteration gap 1) it checks
///   data side:  r_i - eta X X^T r_i  ==  z - X a_{i+1}
///   image side: G r_i - eta X^T r_i  ==  G z - a_{i+1}
/// i.e. the one-step triangle under the apex commutes in Data and its
/// image commutes in Prm.
template <class Scalar>
LawReport check_cone(const DescentTrace<Scalar>& trace,
                     const RegressionContext<Scalar>& ctx,
                     const Vec<Scalar>& y) {
  const Vec<Scalar> z = detail::folded_data(ctx, y);
  const Vec<Scalar> gz = ctx.left_inv() * z;
  LawReport report;
  report.record_vacuous("cone.data_square", kLinearLawTol);
  report.record_vacuous("cone.image_square", kLinearLawTol);
  for (Index k = 0; k + 1 < trace.size(); ++k) {
    if (trace.index[k + 1] - trace.index[k] != 1) continue;  // thinned gap
    const Vec<Scalar>& r_i = trace.r_seq[k];
    const Vec<Scalar> xtr = ctx.design().transpose() * r_i;
    const Vec<Scalar> data_lhs = r_i - trace.eta * (ctx.design() * xtr);
    const Vec<Scalar> data_rhs = z - ctx.design() * trace.a_seq[k + 1];
    report.record("cone.data_square", max_norm_diff(data_lhs, data_rhs),
                  kLinearLawTol, trace.index[k]);
    const Vec<Scalar> image_lhs = ctx.left_inv() * r_i - trace.eta * xtr;
    const Vec<Scalar> image_rhs = gz - trace.a_seq[k + 1];
    report.record("cone.image_square", max_norm_diff(image_lhs, image_rhs),
                  kLinearLawTol, trace.index[k]);
  }
  return report;
}

/// Terminal-object factorization: every leg of the cone factors through
/// the minimum residual as (+P r_i) o (-P z) = (-X a_i), checked at every
/// recorded index as z - P z + P r_i == z - X a_i. Also checks that the
/// mediating morphism is the one forced by the endpoints:
/// r_perp - z == -P z.
template <class Scalar>
LawReport check_terminal(const DescentTrace<Scalar>& trace,
                         const RegressionContext<Scalar>& ctx,
                         const Vec<Scalar>& y) {
  const Vec<Scalar> z = detail::folded_data(ctx, y);
  const Vec<Scalar> pz = ctx.proj() * z;
  LawReport report;
  report.record_vacuous("terminal.factorization", kLinearLawTol);
  for (Index k = 0; k < trace.size(); ++k) {
    const Vec<Scalar> lhs = z - pz + ctx.proj() * trace.r_seq[k];
    const Vec<Scalar> rhs = z - ctx.design() * trace.a_seq[k];
    report.record("terminal.factorization", max_norm_diff(lhs, rhs),
                  kLinearLawTol, trace.index[k]);
  }
  const Vec<Scalar> r_perp = z - ctx.design() * (ctx.left_inv() * z);
  report.record("terminal.mediating_uniqueness",
                max_norm_diff(Vec<Scalar>(r_perp - z), Vec<Scalar>(-pz)),
                kLinearLawTol);
  return report;
}

/// Limit-preservation certificate: measures ||G r_last|| (the image of the
/// limit of residuals) against ||G z - a_last|| (the limit of the images)
/// and the reconstruction G(z - r_last) == a*, each held to
/// tol * (1 + ||a*||). Throws NotConvergedError on an unconverged trace.
template <class Scalar>
LimitCertificate<Scalar> check_rapl(const DescentTrace<Scalar>& trace,
                                    const RegressionContext<Scalar>& ctx,
                                    const Vec<Scalar>& y,
                                    std::optional<Scalar> tol = {}) {
  if (!trace.converged)
    throw NotConvergedError("check_rapl: trace did not converge");
  if (trace.size() < 1) throw std::invalid_argument("check_rapl: empty trace");
  const Vec<Scalar> z = detail::folded_data(ctx, y);

  LimitCertificate<Scalar> cert = closed_form(ctx, y);
  const Vec<Scalar>& a_last = trace.a_seq.back();
  const Vec<Scalar>& r_last = trace.r_seq.back();

  cert.rapl_defect = (cert.a_star - a_last).norm();
  cert.image_of_limit = (ctx.left_inv() * r_last).norm();
  cert.reconstruction_defect =
      (ctx.left_inv() * (z - r_last) - cert.a_star).norm();
  cert.terminal_defect = 0;
  for (Index k = 0; k < trace.size(); ++k) {
    const Scalar d = max_norm_diff(
        Vec<Scalar>(z - ctx.proj() * z + ctx.proj() * trace.r_seq[k]),
        Vec<Scalar>(z - ctx.design() * trace.a_seq[k]));
    cert.terminal_defect = std::max(cert.terminal_defect, d);
  }

  cert.tolerance = tol.value_or(Scalar(kLimitTolFactor) * trace.tol);
  const Scalar bound = cert.tolerance * (Scalar(1) + cert.a_star.norm());
  cert.passed = cert.rapl_defect <= bound && cert.image_of_limit <= bound &&
                cert.reconstruction_defect <= bound;
  return cert;
}

}  // namespace gma
