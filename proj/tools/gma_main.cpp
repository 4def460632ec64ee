// gma: fit a linear model two ways (closed form and gradient descent) and
// machine-check the algebraic laws tying the two together.
//
// Exit codes: 0 all checks passed, 1 a law failed or descent did not
// converge, 2 input error (bad flags, unreadable/malformed data,
// rank-deficient design, invalid step size).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gma/diagnostics.hpp"
#include "gma/gma.hpp"
#include "gma/io/csv.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitLawFailure = 1;
constexpr int kExitInputError = 2;

struct Cli {
  std::string x_path;
  std::string y_path;
  std::optional<long> target;
  std::string b_path;
  bool intercept = false;
  bool header = false;
  std::optional<double> eta;
  double tol = 1e-10;
  long max_iter = 1000000;
  std::uint64_t seed = 0;
  long trials = 0;  // 0 = per-command default
  std::string out_path;
  std::string format;  // "json" or "csv-trace"
  bool inject_fault = false;
};

struct Dataset {
  gma::Matd X;
  gma::Vecd y;
  gma::Vecd b;
};

Dataset load_dataset(const Cli& cli) {
  using namespace gma;
  Dataset d;
  if (cli.target.has_value()) {
    const Matd table = io::read_csv_matrix(cli.x_path, cli.header);
    io::SplitData split = io::split_target(table, *cli.target);
    d.X = std::move(split.X);
    d.y = std::move(split.y);
  } else {
    if (cli.y_path.empty())
      throw ParseError("need --y <file> or --target <col> to locate the response");
    d.X = io::read_csv_matrix(cli.x_path, cli.header);
    d.y = io::read_csv_vector(cli.y_path, cli.header);
  }
  if (cli.intercept) d.X = io::prepend_intercept(d.X);
  d.b = cli.b_path.empty() ? Vecd(Vecd::Zero(d.X.rows()))
                           : io::read_csv_vector(cli.b_path, cli.header);
  if (d.y.size() != d.X.rows())
    throw ParseError("response dim " + std::to_string(d.y.size()) +
                     " != rows(X) = " + std::to_string(d.X.rows()));
  if (d.b.size() != d.X.rows())
    throw ParseError("calibration dim " + std::to_string(d.b.size()) +
                     " != rows(X) = " + std::to_string(d.X.rows()));
  return d;
}

void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw gma::ParseError("cannot open '" + out_path + "' for writing");
  out << payload;
  if (!out) throw gma::ParseError("write to '" + out_path + "' failed");
}

int cmd_fit(const Cli& cli, bool trace_only) {
  using namespace gma;
  const Dataset d = load_dataset(cli);
  const RegressionContextd ctx(d.X, d.b);

  const bool want_trace =
      trace_only || cli.format == "csv-trace";
  if (want_trace) {
    DescentConfigd cfg;
    cfg.eta = cli.eta;
    cfg.tol = cli.tol;
    cfg.max_iter = cli.max_iter;
    const DescentTraced trace = run_descent(ctx, d.y, cfg);
    std::ostringstream os;
    diag::write_trace_csv(os, trace, ctx, d.y);
    write_output(cli.out_path, os.str());
    return trace.converged ? kExitPass : kExitLawFailure;
  }

  diag::FitOptions opt;
  opt.eta = cli.eta;
  opt.tol = cli.tol;
  opt.max_iter = cli.max_iter;
  opt.seed = cli.seed;
  opt.trials = cli.trials > 0 ? cli.trials : 100;
  opt.adjunction.drop_unit_calibration = cli.inject_fault;
  const diag::FitResult fit = diag::run_fit(ctx, d.y, opt);
  write_output(cli.out_path, diag::fit_report_json(fit, cli.seed));
  return fit.passed ? kExitPass : kExitLawFailure;
}

int cmd_lawcheck(const Cli& cli) {
  using namespace gma;
  diag::LawcheckOptions opt;
  opt.trials = cli.trials > 0 ? cli.trials : 50;
  opt.seed = cli.seed;
  opt.adjunction.drop_unit_calibration = cli.inject_fault;
  const diag::LawcheckResult res = diag::run_lawcheck(opt);
  write_output(cli.out_path, diag::lawcheck_report_json(res));
  return res.passed ? kExitPass : kExitLawFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gma: linear regression with machine-checked translation-category, "
      "functor, adjunction, and limit laws"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gma 0.1.0");

  Cli cli;

  const auto add_data_flags = [&](CLI::App* sub) {
    sub->add_option("--x", cli.x_path, "design matrix CSV (rows = samples)")
        ->required();
    sub->add_option("--y", cli.y_path, "response vector CSV");
    sub->add_option("--target", cli.target,
                    "0-based column of --x to use as the response");
    sub->add_option("--calibration", cli.b_path,
                    "fixed calibration vector CSV (default: zero)");
    sub->add_flag("--intercept", cli.intercept,
                  "prepend a constant column of ones to X");
    sub->add_flag("--header", cli.header, "skip the first line of CSV inputs");
    sub->add_option("--eta", cli.eta,
                    "descent step size (default: 1/lambda_max)");
    sub->add_option("--tol", cli.tol,
                    "relative convergence tolerance on ||X^T r||");
    sub->add_option("--max-iter", cli.max_iter, "iteration cap");
  };

  CLI::App* fit = app.add_subcommand(
      "fit", "fit by closed form and by descent, run all law checks");
  add_data_flags(fit);
  fit->add_option("--seed", cli.seed, "seed for the randomized law suites");
  fit->add_option("--trials", cli.trials,
                  "samples per randomized law suite (default 100)");
  fit->add_option("--out", cli.out_path, "output path (default: stdout)");
  fit->add_option("--format", cli.format, "json or csv-trace")
      ->check(CLI::IsMember({"json", "csv-trace"}))
      ->default_val("json");
  fit->add_flag("--inject-fault", cli.inject_fault)->group("");

  CLI::App* lawcheck = app.add_subcommand(
      "lawcheck", "run the law suites on random contexts");
  lawcheck->add_option("--trials", cli.trials,
                       "number of random contexts (default 50)");
  lawcheck->add_option("--seed", cli.seed, "sampling seed");
  lawcheck->add_option("--out", cli.out_path, "output path (default: stdout)");
  lawcheck->add_flag("--inject-fault", cli.inject_fault)->group("");

  CLI::App* trace = app.add_subcommand(
      "trace", "run descent and export the per-iteration CSV");
  add_data_flags(trace);
  trace->add_option("--out", cli.out_path, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (app.got_subcommand(fit)) return cmd_fit(cli, false);
    if (app.got_subcommand(lawcheck)) return cmd_lawcheck(cli);
    return cmd_fit(cli, true);  // trace
  } catch (const gma::Error& e) {
    std::cerr << "gma: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "gma: " << e.what() << "\n";
    return kExitInputError;
  }
}
