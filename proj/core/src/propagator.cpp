#include "tripop/propagator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>

#include "tripop/error.hpp"
#include "tripop/format.hpp"

namespace tripop {

namespace {

using cplx = std::complex<double>;

struct Rhs {
  Mat3 w;
  Vec3 e;
  const Pulse* pulse;

  Amplitudes operator()(double t, const Amplitudes& a) const {
    const double v = pulse->value(t);
    Amplitudes out{};
    for (std::size_t j = 0; j < 3; ++j) {
      cplx h = e[j] * a[j];
      for (std::size_t k = 0; k < 3; ++k) h += v * w[j][k] * a[k];
      out[j] = cplx(h.imag(), -h.real());  // -i h
    }
    return out;
  }
};

Amplitudes axpy(const Amplitudes& a, double h, const Amplitudes& k) {
  return {a[0] + h * k[0], a[1] + h * k[1], a[2] + h * k[2]};
}

double norm_of(const Amplitudes& a) { return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]); }

}  // namespace

int default_steps_per_period() {
  if (const char* env = std::getenv("TRIPOP_STEPS")) {
    int value = 0;
    const std::string text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value <= 0) {
      throw Error(ErrorCode::InvalidConfig, "TRIPOP_STEPS must be a positive integer, got '" + text + "'");
    }
    return value;
  }
  return kDefaultStepsPerPeriod;
}

IntegratorConfig IntegratorConfig::per_period(double period, int steps_per_period,
                                              int samples_per_period) {
  if (!(period > 0.0) || steps_per_period <= 0 || samples_per_period <= 0) {
    throw Error(ErrorCode::InvalidConfig, "period, steps and samples per period must be positive");
  }
  IntegratorConfig cfg;
  cfg.dt = period / steps_per_period;
  cfg.steps_per_period = steps_per_period;
  cfg.record_every = std::max(1, steps_per_period / samples_per_period);
  return cfg;
}

PopulationTrace integrate(const CouplingRatios& ratios, const LevelEnergies& energies,
                          const Pulse& pulse, double t_end, const IntegratorConfig& config,
                          bool record_amplitudes) {
  if (pulse.shape() == PulseShape::IdealKick) {
    throw Error(ErrorCode::InvalidConfig, "an ideal kick cannot be time-stepped; use propagate_kick");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorCode::InvalidConfig, "t_end must be positive and finite");
  }
  if (!(config.dt > 0.0) || config.record_every <= 0) {
    throw Error(ErrorCode::InvalidConfig, "dt and record_every must be positive");
  }
  if (!ratios.is_finite()) throw Error(ErrorCode::InvalidArgument, "coupling ratios must be finite");

  const auto steps = static_cast<std::int64_t>(std::ceil(t_end / config.dt - 1e-9));
  const double h = t_end / static_cast<double>(steps);
  const Rhs f{ratios.interaction_matrix(), energies.e, &pulse};

  PopulationTrace trace;
  const auto expected = static_cast<std::size_t>(steps / config.record_every + 2);
  trace.times.reserve(expected);
  trace.samples.reserve(expected);
  if (record_amplitudes) trace.amplitudes.reserve(expected);

  Amplitudes a{cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)};
  auto record = [&](double t) {
    trace.times.push_back(t);
    trace.samples.push_back(populations_of(a));
    if (record_amplitudes) trace.amplitudes.push_back(a);
  };
  record(0.0);

  double drift = 0.0;
  for (std::int64_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * h;
    const Amplitudes k1 = f(t, a);
    const Amplitudes k2 = f(t + 0.5 * h, axpy(a, 0.5 * h, k1));
    const Amplitudes k3 = f(t + 0.5 * h, axpy(a, 0.5 * h, k2));
    const Amplitudes k4 = f(t + h, axpy(a, h, k3));
    for (std::size_t j = 0; j < 3; ++j) a[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);

    drift = std::max(drift, std::abs(1.0 - norm_of(a)));
    const std::int64_t done = n + 1;
    if (done % config.record_every == 0 || done == steps) {
      record(static_cast<double>(done) * h);
    }
  }
  trace.norm_drift = drift;
  if (!(drift <= config.max_norm_drift)) {
    throw Error(ErrorCode::NormDriftExceeded,
                "norm drift " + format_double(drift) + " exceeds " +
                    format_double(config.max_norm_drift) + "; reduce the step");
  }
  return trace;
}

AmplitudeState propagate_kick(const DressedBasis& basis, double kick_area) noexcept {
  return amplitudes_at(basis, kick_area);
}

double compare_analytic_numeric(const CouplingRatios& ratios, const Pulse& pulse, double t_end,
                                const IntegratorConfig& config) {
  const DressedBasis basis = build_dressed_basis(ratios);
  const PopulationTrace trace = integrate(ratios, LevelEnergies::degenerate(), pulse, t_end, config);
  double worst = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const PopulationSample exact = populations_general(basis, pulse.area(trace.times[i]).a);
    const PopulationSample& num = trace.samples[i];
    worst = std::max({worst, std::abs(num.p1 - exact.p1), std::abs(num.p2 - exact.p2),
                      std::abs(num.p3 - exact.p3)});
  }
  return worst;
}

double dwell_time(const PopulationTrace& trace, double threshold) {
  double total = 0.0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const bool a = trace.samples[i - 1].p2 > threshold;
    const bool b = trace.samples[i].p2 > threshold;
    const double span = trace.times[i] - trace.times[i - 1];
    if (a && b) {
      total += span;
    } else if (a != b) {
      // Linear crossing inside the interval.
      const double p0 = trace.samples[i - 1].p2;
      const double p1 = trace.samples[i].p2;
      const double frac = (threshold - p0) / (p1 - p0);
      total += a ? frac * span : (1.0 - frac) * span;
    }
  }
  return total;
}

void write_trace_csv(std::ostream& out, const PopulationTrace& trace) {
  const bool amps = !trace.amplitudes.empty();
  out << "t,p1,p2,p3";
  if (amps) out << ",re_a1,im_a1,re_a2,im_a2,re_a3,im_a3";
  out << '\n';
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& s = trace.samples[i];
    out << format_double(trace.times[i]) << ',' << format_double(s.p1) << ','
        << format_double(s.p2) << ',' << format_double(s.p3);
    if (amps) {
      for (const auto& c : trace.amplitudes[i]) {
        out << ',' << format_double(c.real()) << ',' << format_double(c.imag());
      }
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing trace CSV");
}

}  // namespace tripop
