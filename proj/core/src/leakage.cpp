#include "tripop/leakage.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "tripop/error.hpp"
#include "tripop/format.hpp"

namespace tripop {

LeakageEstimate delta_p2_early(double v12_0, double v13_0, double v23_0, double omega12,
                               double omega13, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "time must be non-negative");
  const double coeff =
      (2.0 * (2.0 * omega13 - omega12) * v12_0 * v13_0 * v23_0 + omega12 * omega12 * v12_0 * v12_0) /
      12.0;
  LeakageEstimate est;
  est.delta_p2 = coeff * t * t * t * t;
  est.t = t;
  est.regime = LeakageRegime::EarlyTime;
  est.beyond_leading_order = coeff == 0.0 && (omega12 != 0.0 || omega13 != 0.0);
  return est;
}

LeakageEstimate delta_p2_at_t0(const TransferCondition& cond, int beta, double omega12_ratio,
                               double omega13_ratio) {
  if (beta != 1 && beta != -1) throw Error(ErrorCode::InvalidArgument, "beta must be +1 or -1");
  constexpr double pi = std::numbers::pi;
  const double n1 = cond.n1;
  const double n2 = cond.n2;
  const double pre = std::pow(pi / 2.0, 6) / 27.0;
  const double bracket =
      (pi / 3.0) * beta * n1 * n2 * (n2 - n1) * (2.0 * omega13_ratio - omega12_ratio) +
      (n2 - n1) * (n2 - n1) * omega12_ratio * omega12_ratio;
  LeakageEstimate est;
  est.delta_p2 = pre * bracket;
  est.t = std::numbers::pi / 2.0;  // in units of 1/omega
  est.regime = LeakageRegime::AtT0;
  est.beyond_leading_order = cond.n1 == cond.n2 && (omega12_ratio != 0.0 || omega13_ratio != 0.0);
  return est;
}

std::vector<LeakagePoint> leakage_scan(const TransferCondition& cond, int beta,
                                       std::span<const SplittingRatios> ratios,
                                       const IntegratorConfig& config, double omega) {
  if (beta != 1 && beta != -1) throw Error(ErrorCode::InvalidArgument, "beta must be +1 or -1");
  const Pulse drive = harmonic_for_condition(cond, omega);
  const double t0 = std::numbers::pi / (2.0 * omega);
  CouplingRatios coupling = cond.level2_ratios();
  coupling.beta = beta;

  std::vector<LeakagePoint> out;
  out.reserve(ratios.size());
  for (const auto& r : ratios) {
    const auto energies = LevelEnergies::from_splittings(r.omega12_ratio * omega, r.omega13_ratio * omega);
    const PopulationTrace trace = integrate(coupling, energies, drive, t0, config);
    LeakagePoint point;
    point.ratios = r;
    point.deficit = 1.0 - trace.samples.back().p2;
    point.estimate = delta_p2_at_t0(cond, beta, r.omega12_ratio, r.omega13_ratio).delta_p2;
    out.push_back(point);
  }
  return out;
}

void write_scan_csv(std::ostream& out, std::span<const LeakagePoint> points) {
  out << "omega12_ratio,omega13_ratio,deficit,estimate\n";
  for (const auto& p : points) {
    out << format_double(p.ratios.omega12_ratio) << ',' << format_double(p.ratios.omega13_ratio)
        << ',' << format_double(p.deficit) << ',' << format_double(p.estimate) << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing scan CSV");
}

TwoLevelPopulations two_level_populations(const TwoLevelParams& p) noexcept {
  // c = a1 + y a2 with z = eps1 + y and y^2 + (eps1 - eps2) y - 1 = 0.
  const double d = p.eps2 - p.eps1;
  const double root = std::sqrt(d * d + 4.0);
  const double y_plus = 0.5 * (d + root);
  const double y_minus = 0.5 * (d - root);
  const double z_plus = p.eps1 + y_plus;
  const double z_minus = p.eps1 + y_minus;
  const double det = y_minus - y_plus;

  // Rows of the inverse of [[1, y+], [1, y-]].
  const double m11 = y_minus / det, m12 = -y_plus / det;
  const double m21 = -1.0 / det, m22 = 1.0 / det;
  const double c = std::cos((z_plus - z_minus) * p.action);
  const double p1 = m11 * m11 + m12 * m12 + 2.0 * m11 * m12 * c;
  const double p2 = m21 * m21 + m22 * m22 + 2.0 * m21 * m22 * c;
  return {p1, p2};
}

double two_level_bound(double eps1, double eps2) noexcept {
  const double d = eps2 - eps1;
  return 1.0 / (1.0 + d * d / 4.0);
}

double two_level_harmonic_leakage_estimate(double omega12_ratio) noexcept {
  return 0.25 * std::pow(std::numbers::pi / 2.0, 6) * omega12_ratio * omega12_ratio;
}

}  // namespace tripop
