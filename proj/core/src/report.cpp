#include "tripop/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <span>
#include <iostream>
#include <numbers>
#include <ostream>

#include "tripop/error.hpp"
#include "tripop/format.hpp"
#include "tripop/leakage.hpp"
#include "tripop/propagator.hpp"
#include "tripop/pulse.hpp"

#ifndef TRIPOP_VERSION
#define TRIPOP_VERSION "0.0.0"
#endif

namespace tripop {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kAnalyticTol = 1e-12;
constexpr double kNumericTol = 1e-6;

std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else return v;
      },
      cell);
}

ordered_json cell_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      cell);
}

ordered_json pairs_json(const std::vector<std::pair<std::string, Cell>>& pairs) {
  ordered_json obj = ordered_json::object();
  for (const auto& [k, v] : pairs) obj[k] = cell_json(v);
  return obj;
}

void require_max_product(long long max_product) {
  if (max_product < 0) throw Error(ErrorCode::InvalidArgument, "max product must be non-negative");
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::size_t Report::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw Error(ErrorCode::InvalidArgument, "no column " + std::string(name));
  return static_cast<std::size_t>(it - columns.begin());
}

double Report::number(std::size_t row, std::string_view name) const {
  const Cell& cell = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* i = std::get_if<long long>(&cell)) return static_cast<double>(*i);
  throw Error(ErrorCode::InvalidArgument, "column " + std::string(name) + " is not numeric");
}

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw Error(ErrorCode::ParseError, "unknown format '" + std::string(text) + "' (csv|json)");
}

std::string_view tool_version() noexcept { return TRIPOP_VERSION; }

void write_report(std::ostream& out, const Report& report, Format format) {
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      out << (i ? "," : "") << report.columns[i];
    }
    out << '\n';
    for (const auto& row : report.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
      out << '\n';
    }
  } else {
    ordered_json doc;
    doc["meta"]["command"] = report.command;
    doc["meta"]["parameters"] = pairs_json(report.parameters);
    doc["meta"]["version"] = std::string(tool_version());
    if (!report.summary.empty()) doc["meta"]["summary"] = pairs_json(report.summary);
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.rows) {
      ordered_json obj = ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[report.columns[i]] = cell_json(row[i]);
      rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing report");
}

void write_report(const std::string& path, const Report& report, Format format) {
  if (path == "-") {
    write_report(std::cout, report, format);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  write_report(out, report, format);
}

Report table_report(long long max_product) {
  require_max_product(max_product);
  Report rep;
  rep.command = "table";
  rep.parameters = {{"max_product", max_product}};
  rep.columns = {"n1",        "n2",         "n_e",       "n_o",        "n_op",
                 "k_case_i",  "kp_case_i",  "k_case_ii", "kp_case_ii", "k_case_iii",
                 "kp_case_iii", "A_t0",     "alpha"};
  for (const auto& cond : enumerate_conditions(max_product)) {
    if (cond.sign != 1) continue;
    const auto cases = classify_cases(cond);
    rep.rows.push_back({Cell{(long long)cond.n1}, Cell{(long long)cond.n2},
                        Cell{(long long)cond.pair.n_e()}, Cell{(long long)cond.pair.n_o},
                        Cell{(long long)cond.pair.n_op}, Cell{(long long)cases.case_i.k},
                        Cell{(long long)cases.case_i.kp}, Cell{(long long)cases.case_ii.k},
                        Cell{(long long)cases.case_ii.kp}, Cell{(long long)cases.case_iii.k},
                        Cell{(long long)cases.case_iii.kp}, Cell{cond.action_t0}, Cell{cond.alpha}});
  }
  return rep;
}

Report conditions_report(long long max_product) {
  require_max_product(max_product);
  Report rep;
  rep.command = "conditions";
  rep.parameters = {{"max_product", max_product}};
  rep.columns = {"n1", "n2", "n_o", "n_op", "sign", "r", "alpha", "beta", "A_t0", "p3_max"};
  for (const auto& cond : enumerate_conditions(max_product)) {
    rep.rows.push_back({Cell{(long long)cond.n1}, Cell{(long long)cond.n2},
                        Cell{(long long)cond.pair.n_o}, Cell{(long long)cond.pair.n_op},
                        Cell{(long long)cond.sign}, Cell{cond.r}, Cell{cond.alpha}, Cell{cond.beta},
                        Cell{cond.action_t0}, Cell{p3_max(cond)}});
  }
  return rep;
}

Report trace_report(const TraceRequest& req) {
  if (!(req.periods > 0.0)) throw Error(ErrorCode::InvalidArgument, "periods must be positive");
  const CouplingRatios ratios{req.alpha, req.beta, {0.0, 0.0, 0.0}};
  const DressedBasis basis = build_dressed_basis(ratios);
  const Pulse drive = Pulse::harmonic(req.action_t0, 1.0);
  const double period = drive.period();
  const auto config = IntegratorConfig::per_period(period, req.steps_per_period);
  const PopulationTrace trace =
      integrate(ratios, LevelEnergies::degenerate(), drive, req.periods * period, config);

  Report rep;
  rep.command = "trace";
  rep.parameters = {{"alpha", req.alpha},
                    {"beta", req.beta},
                    {"area", req.action_t0},
                    {"periods", req.periods},
                    {"omega", 1.0},
                    {"steps_per_period", (long long)req.steps_per_period}};
  rep.columns = {"t", "p1", "p2", "p3", "p1_num", "p2_num", "p3_num"};
  double worst = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double t = trace.times[i];
    const auto exact = populations_general(basis, drive.area(t).a);
    const auto& num = trace.samples[i];
    worst = std::max({worst, std::abs(exact.p1 - num.p1), std::abs(exact.p2 - num.p2),
                      std::abs(exact.p3 - num.p3)});
    rep.rows.push_back({Cell{t / period}, Cell{exact.p1}, Cell{exact.p2}, Cell{exact.p3},
                        Cell{num.p1}, Cell{num.p2}, Cell{num.p3}});
  }
  rep.summary = {{"max_deviation", worst}, {"norm_drift", trace.norm_drift}};
  return rep;
}

VerifyOutcome verify_report(long long max_product, int steps_per_period, double alpha_perturbation) {
  require_max_product(max_product);
  VerifyOutcome outcome;
  Report& rep = outcome.report;
  rep.command = "verify";
  rep.parameters = {{"max_product", max_product},
                    {"steps_per_period", (long long)steps_per_period},
                    {"alpha_perturbation", alpha_perturbation}};
  rep.columns = {"n1",           "n2",          "sign",       "alpha",
                 "A_t0",         "p1_t0",       "p2_t0",      "p3_t0",
                 "rk4_deviation", "norm_drift", "case_identities", "status"};

  bool all_pass = true;
  long long failures = 0;
  for (const auto& cond : enumerate_conditions(max_product)) {
    const auto at_t0 = populations_closed_form(cond, cond.action_t0);
    const bool analytic_ok = std::abs(at_t0.p2 - 1.0) <= kAnalyticTol &&
                             std::abs(at_t0.p1) <= kAnalyticTol && std::abs(at_t0.p3) <= kAnalyticTol;

    const auto cases = classify_cases(cond);
    const long long prod = cond.product();
    const bool cases_ok = cases.parities_hold() && cases.product_case_i() == prod &&
                          cases.product_case_ii() == prod && cases.product_case_iii() == prod;

    double deviation = std::numeric_limits<double>::infinity();
    double drift = std::numeric_limits<double>::infinity();
    std::string error;
    try {
      const Pulse drive = harmonic_for_condition(cond, 1.0);
      const double period = drive.period();
      CouplingRatios ratios = cond.ratios();
      ratios.alpha += alpha_perturbation;
      const PopulationTrace trace = integrate(ratios, LevelEnergies::degenerate(), drive, period,
                                              IntegratorConfig::per_period(period, steps_per_period));
      deviation = 0.0;
      for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto exact = populations_closed_form(cond, drive.area(trace.times[i]).a);
        const auto& num = trace.samples[i];
        deviation = std::max({deviation, std::abs(exact.p1 - num.p1), std::abs(exact.p2 - num.p2),
                              std::abs(exact.p3 - num.p3)});
      }
      drift = trace.norm_drift;
    } catch (const Error& e) {
      error = e.what();
    }
    const bool numeric_ok = error.empty() && deviation < kNumericTol;
    const bool pass = analytic_ok && cases_ok && numeric_ok;
    if (!pass) {
      all_pass = false;
      ++failures;
    }
    rep.rows.push_back({Cell{(long long)cond.n1}, Cell{(long long)cond.n2}, Cell{(long long)cond.sign},
                        Cell{cond.alpha}, Cell{cond.action_t0}, Cell{at_t0.p1}, Cell{at_t0.p2},
                        Cell{at_t0.p3}, Cell{deviation}, Cell{drift},
                        Cell{std::string(cases_ok ? "exact" : "violated")},
                        Cell{std::string(pass ? "pass" : "fail")}});
  }
  rep.summary = {{"families", (long long)rep.rows.size()},
                 {"failures", failures},
                 {"status", std::string(all_pass ? "pass" : "fail")}};
  outcome.passed = all_pass;
  return outcome;
}

std::vector<GridPoint> parse_grid(std::string_view text) {
  struct Axis {
    std::string name;
    std::vector<double> values;
  };
  std::vector<Axis> axes;
  for (const auto part : split(text, ',')) {
    const auto fields = split(part, ':');
    const std::string name(fields[0]);
    if (name != "omega" && name != "omega12" && name != "omega13") {
      throw Error(ErrorCode::ParseError, "unknown grid axis '" + name + "'");
    }
    for (const auto& a : axes) {
      if (a.name == name) throw Error(ErrorCode::ParseError, "duplicate grid axis '" + name + "'");
    }
    Axis axis{name, {}};
    if (fields.size() == 2) {
      axis.values.push_back(parse_double(fields[1]));
    } else if (fields.size() == 4) {
      const double start = parse_double(fields[1]);
      const double stop = parse_double(fields[2]);
      int count = 0;
      const auto [ptr, ec] = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), count);
      if (ec != std::errc() || ptr != fields[3].data() + fields[3].size() || count < 1) {
        throw Error(ErrorCode::ParseError, "grid count must be a positive integer in '" + std::string(part) + "'");
      }
      for (int i = 0; i < count; ++i) {
        axis.values.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
      }
    } else {
      throw Error(ErrorCode::ParseError,
                  "grid axis must be name:value or name:start:stop:count, got '" + std::string(part) + "'");
    }
    axes.push_back(std::move(axis));
  }

  std::vector<GridPoint> points{GridPoint{}};
  for (const auto& axis : axes) {
    std::vector<GridPoint> next;
    next.reserve(points.size() * axis.values.size());
    for (const auto& p : points) {
      for (double v : axis.values) {
        GridPoint q = p;
        if (axis.name == "omega") q.omega = v;
        else if (axis.name == "omega12") q.omega12 = v;
        else q.omega13 = v;
        next.push_back(q);
      }
    }
    points = std::move(next);
  }
  for (const auto& p : points) {
    if (!(p.omega > 0.0)) throw Error(ErrorCode::ParseError, "drive frequency omega must be positive");
  }
  return points;
}

Report leakage_report(OddPair pair, std::string_view grid, int steps_per_period, int beta) {
  const TransferCondition cond = condition_from_odd_pair(pair, 1, beta);
  const auto points = parse_grid(grid);

  Report rep;
  rep.command = "leakage";
  rep.parameters = {{"n_o", (long long)pair.n_o},
                    {"n_op", (long long)pair.n_op},
                    {"beta", (long long)beta},
                    {"grid", std::string(grid)},
                    {"steps_per_period", (long long)steps_per_period}};
  rep.columns = {"omega12_ratio", "omega13_ratio", "deficit", "estimate"};
  for (const auto& p : points) {
    const SplittingRatios ratio{p.omega12 / p.omega, p.omega13 / p.omega};
    const auto config = IntegratorConfig::per_period(2.0 * std::numbers::pi / p.omega, steps_per_period);
    const auto scan = leakage_scan(cond, beta, std::span(&ratio, 1), config, p.omega);
    rep.rows.push_back({Cell{ratio.omega12_ratio}, Cell{ratio.omega13_ratio}, Cell{scan[0].deficit},
                        Cell{scan[0].estimate}});
  }
  return rep;
}

Report kick_report(const KickRequest& req) {
  if (req.widths.empty()) throw Error(ErrorCode::InvalidArgument, "at least one kick width is required");
  for (std::size_t i = 0; i < req.widths.size(); ++i) {
    if (!(req.widths[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "kick widths must be positive");
    if (i > 0 && !(req.widths[i] < req.widths[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "kick widths must be strictly decreasing");
    }
  }
  const CouplingRatios ratios{req.alpha, req.beta, {0.0, 0.0, 0.0}};
  const DressedBasis basis = build_dressed_basis(ratios);
  const auto energies = LevelEnergies::from_splittings(req.omega12, req.omega13);

  Report rep;
  rep.command = "kick";
  rep.parameters = {{"alpha", req.alpha},     {"beta", req.beta},
                    {"area", req.area},       {"omega12", req.omega12},
                    {"omega13", req.omega13}, {"steps_per_period", (long long)req.steps_per_period}};
  rep.columns = {"kind", "width", "p1", "p2", "p3"};

  const auto ideal = populations_of(propagate_kick(basis, req.area).a);
  rep.rows.push_back({Cell{std::string("ideal")}, Cell{0.0}, Cell{ideal.p1}, Cell{ideal.p2}, Cell{ideal.p3}});

  // Centre far enough from t = 0 that the widest truncated kick starts after it.
  const double center = std::max(1.0, 1.25 * kKickTruncation * req.widths.front());
  const double t_end = 2.0 * center;
  const auto config = IntegratorConfig::per_period(2.0 * std::numbers::pi, req.steps_per_period);
  for (double w : req.widths) {
    const Pulse kick = Pulse::gaussian_kick(req.area, center, w);
    const PopulationTrace trace = integrate(ratios, energies, kick, t_end, config);
    const auto& p = trace.samples.back();
    rep.rows.push_back({Cell{std::string("gaussian")}, Cell{w}, Cell{p.p1}, Cell{p.p2}, Cell{p.p3}});
  }
  rep.summary = {{"kick_center", center}, {"t_end", t_end}};
  return rep;
}

}  // namespace tripop
