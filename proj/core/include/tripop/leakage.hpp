#pragma once

// Population leakage for nearly degenerate levels and the two-level reference.
//
// The two perturbative estimates are leading-order power series in time.
// They are only trustworthy while both omega t and V t are small; use
// leakage_scan (two RK4 runs) for actual numbers. Measured against the
// integrator, the early-time estimate tracks P2(nondegenerate) -
// P2(degenerate) to a few percent for omega t <= 0.1. Evaluated at the first
// transfer instant t0 = pi / (2 omega) it is far outside that regime.

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "tripop/propagator.hpp"
#include "tripop/transfer.hpp"

namespace tripop {

enum class LeakageRegime { EarlyTime, AtT0 };

struct LeakageEstimate {
  double delta_p2 = 0.0;  // signed
  double t = 0.0;
  LeakageRegime regime = LeakageRegime::EarlyTime;
  /// The leading-order coefficient vanishes identically for these inputs
  /// (e.g. n1 == n2, or V12 = 0) while the splittings do not; the true
  /// leakage is of higher order and the zero is not a prediction.
  bool beyond_leading_order = false;
};

/// Documented validity window of the early-time estimate in omega t.
inline constexpr double kEarlyTimeValidity = 0.1;

/// (1/12)[2(2 w13 - w12) V12 V13 V23 + w12^2 V12^2] t^4 with V_ij at t = 0.
LeakageEstimate delta_p2_early(double v12_0, double v13_0, double v23_0, double omega12,
                               double omega13, double t);

/// The early-time estimate evaluated at t0 = T/4 of the harmonic drive matched
/// to `cond`, in terms of omega_ij / omega.
LeakageEstimate delta_p2_at_t0(const TransferCondition& cond, int beta, double omega12_ratio,
                               double omega13_ratio);

struct SplittingRatios {
  double omega12_ratio = 0.0;
  double omega13_ratio = 0.0;
};

struct LeakagePoint {
  SplittingRatios ratios;
  double deficit = 0.0;   // 1 - P2(t0), measured
  double estimate = 0.0;  // delta_p2_at_t0
};

/// Non-degenerate RK4 runs of the harmonic drive matched to `cond` (beta
/// overriding the condition's), stopped at t0 = pi / (2 omega).
std::vector<LeakagePoint> leakage_scan(const TransferCondition& cond, int beta,
                                       std::span<const SplittingRatios> ratios,
                                       const IntegratorConfig& config, double omega = 1.0);

/// Header `omega12_ratio,omega13_ratio,deficit,estimate`.
void write_scan_csv(std::ostream& out, std::span<const LeakagePoint> points);

struct TwoLevelParams {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double action = 0.0;
};

struct TwoLevelPopulations {
  double p1 = 1.0;
  double p2 = 0.0;
};

/// Levels 1 and 2 coupled by V(t) with diagonal ratios eps1, eps2, solved in
/// the 2x2 dressed basis.
TwoLevelPopulations two_level_populations(const TwoLevelParams& p) noexcept;

/// 1 / (1 + (eps2 - eps1)^2 / 4).
double two_level_bound(double eps1, double eps2) noexcept;

/// (1/4)(pi/2)^6 (omega12 / omega)^2.
double two_level_harmonic_leakage_estimate(double omega12_ratio) noexcept;

}  // namespace tripop
