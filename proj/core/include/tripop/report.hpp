#pragma once

// Tabular reports behind the `tripop` command-line tool. Each report is a
// flat table plus metadata and renders either as CSV (header row, then one
// row per record) or as JSON ({"meta": {...}, "rows": [{column: value}]}).

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tripop/transfer.hpp"

namespace tripop {

using Cell = std::variant<long long, double, std::string>;

struct Report {
  std::string command;
  std::vector<std::pair<std::string, Cell>> parameters;
  std::vector<std::pair<std::string, Cell>> summary;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Index of a column; throws Error{InvalidArgument} if absent.
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

enum class Format { Csv, Json };

Format parse_format(std::string_view text);
std::string_view tool_version() noexcept;

void write_report(std::ostream& out, const Report& report, Format format);
/// Writes to `path`, or to stdout when path is "-".
void write_report(const std::string& path, const Report& report, Format format);

/// One row per (n1, n2) with n1 n2 <= max_product (r > 0 member).
Report table_report(long long max_product);

/// Every sign-resolved family member with n1 n2 <= max_product.
Report conditions_report(long long max_product);

struct TraceRequest {
  double alpha = 0.0;
  double beta = 1.0;
  double action_t0 = 0.0;
  double periods = 1.0;
  int steps_per_period = 20000;
};

/// Harmonic drive with omega = 1 and v0 = action_t0; columns
/// t (in periods), analytic p1..p3 and RK4 p1_num..p3_num.
Report trace_report(const TraceRequest& request);

struct VerifyOutcome {
  Report report;
  bool passed = false;
};

/// Per family: closed-form P2(t0) = 1 within 1e-12, one-period RK4 within
/// 1e-6 of the closed form, exact case identities. `alpha_perturbation` is
/// added to the integrated coupling only (negative control).
VerifyOutcome verify_report(long long max_product, int steps_per_period,
                            double alpha_perturbation = 0.0);

struct GridPoint {
  double omega = 1.0;
  double omega12 = 0.0;
  double omega13 = 0.0;
};

/// Comma-separated axes `name:value` or `name:start:stop:count` (inclusive
/// linspace) over names omega12, omega13 (level splittings) and omega (drive
/// frequency, default 1). The first axis varies slowest.
std::vector<GridPoint> parse_grid(std::string_view text);

Report leakage_report(OddPair pair, std::string_view grid, int steps_per_period, int beta = 1);

struct KickRequest {
  double alpha = 0.0;
  double beta = 1.0;
  double area = 0.0;
  std::vector<double> widths;
  double omega12 = 0.0;
  double omega13 = 0.0;
  int steps_per_period = 20000;
};

/// Ideal-kick spectral populations followed by one RK4 row per Gaussian
/// width (post-pulse populations).
Report kick_report(const KickRequest& request);

}  // namespace tripop
