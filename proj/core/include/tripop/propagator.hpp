#pragma once

// Fixed-step RK4 integration of the exact coupled amplitude equations
//
//   i da_j/dt = E_j a_j + V(t) sum_k W_jk a_k,   a(0) = (1, 0, 0),
//
// used as an oracle for the analytic dressed-state populations, plus the
// spectral propagation of an ideal kick.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tripop/dressed.hpp"
#include "tripop/pulse.hpp"

namespace tripop {

/// Bare level energies; omega_ij = E_i - E_j.
struct LevelEnergies {
  Vec3 e{0.0, 0.0, 0.0};

  static LevelEnergies degenerate() noexcept { return {}; }
  /// E = (0, -omega12, -omega13).
  static LevelEnergies from_splittings(double omega12, double omega13) noexcept {
    return {Vec3{0.0, -omega12, -omega13}};
  }

  double omega12() const noexcept { return e[0] - e[1]; }
  double omega13() const noexcept { return e[0] - e[2]; }
  bool is_degenerate() const noexcept { return e[0] == 0.0 && e[1] == 0.0 && e[2] == 0.0; }
};

inline constexpr int kDefaultStepsPerPeriod = 20000;
inline constexpr int kDefaultSamplesPerPeriod = 2000;

/// Steps per period, overridable through the TRIPOP_STEPS environment variable.
int default_steps_per_period();

struct IntegratorConfig {
  double dt = 0.0;
  int steps_per_period = kDefaultStepsPerPeriod;
  int record_every = 1;
  /// Runs whose norm drift exceeds this are rejected.
  double max_norm_drift = 1e-6;

  /// dt = period / steps_per_period; records samples_per_period points per period.
  static IntegratorConfig per_period(double period, int steps_per_period = default_steps_per_period(),
                                     int samples_per_period = kDefaultSamplesPerPeriod);
};

struct PopulationTrace {
  std::vector<double> times;
  std::vector<PopulationSample> samples;
  std::vector<Amplitudes> amplitudes;  // empty unless requested
  double norm_drift = 0.0;             // max |1 - sum |a_i|^2| over every step

  std::size_t size() const noexcept { return times.size(); }
};

/// Throws Error{InvalidConfig} for an ideal-kick pulse, non-positive t_end or
/// dt, and Error{NormDriftExceeded} when the step is too coarse.
PopulationTrace integrate(const CouplingRatios& ratios, const LevelEnergies& energies,
                          const Pulse& pulse, double t_end, const IntegratorConfig& config,
                          bool record_amplitudes = false);

/// State immediately after area * delta(t - t0); (1, 0, 0) before it.
AmplitudeState propagate_kick(const DressedBasis& basis, double kick_area) noexcept;

/// Max componentwise |P_numeric - P_analytic| over the recorded samples of a
/// degenerate run, with the analytic side evaluated at A(t).
double compare_analytic_numeric(const CouplingRatios& ratios, const Pulse& pulse, double t_end,
                                const IntegratorConfig& config);

/// Total time the level-2 population stays above `threshold`, estimated from
/// the recorded samples.
double dwell_time(const PopulationTrace& trace, double threshold = 0.99);

/// Header `t,p1,p2,p3` (plus `re_a1,im_a1,...` when amplitudes were recorded).
void write_trace_csv(std::ostream& out, const PopulationTrace& trace);

}  // namespace tripop
