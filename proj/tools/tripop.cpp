// tripop: population-transfer tables, traces and verification runs.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "tripop/error.hpp"
#include "tripop/propagator.hpp"
#include "tripop/report.hpp"

namespace {

struct Common {
  std::string format = "csv";
  std::string out = "-";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out, "Output path ('-' for stdout)")->capture_default_str();
}

void add_steps(CLI::App* cmd, int& steps) {
  cmd->add_option("--steps-per-period", steps, "RK4 steps per drive period (env TRIPOP_STEPS)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complete population transfer in a degenerate three-level atom"};
  app.set_version_flag("--version", std::string(tripop::tool_version()));
  app.require_subcommand(1);

  Common common;
  long long max_product = 35;
  double alpha = 0.0;
  double beta = 1.0;
  double area = 0.0;
  double periods = 1.0;
  int n_o = 1;
  int n_op = 1;
  int beta_sign = 1;
  std::string grid = "omega12:0,omega13:0";
  std::vector<double> widths{0.1, 0.05, 0.025};
  double omega12 = 0.0;
  double omega13 = 0.0;
  double alpha_perturbation = 0.0;
  int steps = 0;
  try {
    steps = tripop::default_steps_per_period();
  } catch (const tripop::Error& e) {
    std::cerr << "tripop: " << e.what() << '\n';
    return 2;
  }

  auto* table = app.add_subcommand("table", "Transfer conditions, one row per (n1, n2)");
  table->add_option("--max-product", max_product, "Largest n1*n2")->capture_default_str();
  add_common(table, common);

  auto* conditions = app.add_subcommand("conditions", "Every sign-resolved transfer condition");
  conditions->add_option("--max-product", max_product, "Largest n1*n2")->capture_default_str();
  add_common(conditions, common);

  auto* trace = app.add_subcommand("trace", "Analytic and RK4 populations under a harmonic drive");
  trace->add_option("--alpha", alpha, "V12/V23")->required();
  trace->add_option("--beta", beta, "V13/V23")->capture_default_str();
  trace->add_option("--area", area, "Action at a quarter period")->required();
  trace->add_option("--periods", periods, "Duration in drive periods")->capture_default_str();
  add_steps(trace, steps);
  add_common(trace, common);

  auto* verify = app.add_subcommand("verify", "Check every condition analytically and by RK4");
  verify->add_option("--max-product", max_product, "Largest n1*n2")->capture_default_str();
  verify->add_option("--alpha-perturbation", alpha_perturbation,
                     "Offset added to alpha in the RK4 run only")
      ->capture_default_str();
  add_steps(verify, steps);
  add_common(verify, common);

  auto* leakage = app.add_subcommand("leakage", "Measured 1 - P2(t0) for nearly degenerate levels");
  leakage->add_option("--n-o", n_o, "First odd integer")->required();
  leakage->add_option("--n-op", n_op, "Second odd integer")->required();
  leakage->add_option("--beta", beta_sign, "+1 or -1")->check(CLI::IsMember({1, -1}))->capture_default_str();
  leakage->add_option("--grid", grid, "Axes name:value or name:start:stop:count")->capture_default_str();
  add_steps(leakage, steps);
  add_common(leakage, common);

  auto* kick = app.add_subcommand("kick", "Ideal kick against Gaussian kicks of decreasing width");
  kick->add_option("--alpha", alpha, "V12/V23")->required();
  kick->add_option("--beta", beta, "V13/V23")->capture_default_str();
  kick->add_option("--area", area, "Kick area")->required();
  kick->add_option("--widths", widths, "Gaussian widths, decreasing")->delimiter(',')->capture_default_str();
  kick->add_option("--omega12", omega12, "E1 - E2")->capture_default_str();
  kick->add_option("--omega13", omega13, "E1 - E3")->capture_default_str();
  add_steps(kick, steps);
  add_common(kick, common);

  CLI11_PARSE(app, argc, argv);

  try {
    const tripop::Format format = tripop::parse_format(common.format);
    if (table->parsed()) {
      tripop::write_report(common.out, tripop::table_report(max_product), format);
    } else if (conditions->parsed()) {
      tripop::write_report(common.out, tripop::conditions_report(max_product), format);
    } else if (trace->parsed()) {
      tripop::write_report(common.out, tripop::trace_report({alpha, beta, area, periods, steps}), format);
    } else if (verify->parsed()) {
      const auto outcome = tripop::verify_report(max_product, steps, alpha_perturbation);
      tripop::write_report(common.out, outcome.report, format);
      if (!outcome.passed) {
        std::cerr << "tripop: verification failed\n";
        return 1;
      }
    } else if (leakage->parsed()) {
      tripop::write_report(common.out, tripop::leakage_report({n_o, n_op}, grid, steps, beta_sign), format);
    } else if (kick->parsed()) {
      tripop::write_report(common.out,
                           tripop::kick_report({alpha, beta, area, widths, omega12, omega13, steps}),
                           format);
    }
  } catch (const tripop::Error& e) {
    std::cerr << "tripop: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
