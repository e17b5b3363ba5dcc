#pragma once

// Time profiles V(t) of the common interaction and their action integrals
// A(t) = int_0^t V(t') dt'. Units: hbar = 1, so V is an angular frequency and
// A is dimensionless.

#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

namespace tripop {

struct TransferCondition;

enum class PulseShape { Harmonic, Constant, GaussianKick, IdealKick, Tabulated };

struct ActionValue {
  double t = 0.0;
  double a = 0.0;
};

struct PulseSample {
  double t = 0.0;
  double v = 0.0;
};

/// Gaussian kicks are truncated at this many widths either side of the center.
inline constexpr double kKickTruncation = 8.0;

class Pulse {
 public:
  /// V(t) = v0 cos(omega t); omega > 0.
  static Pulse harmonic(double v0, double omega);
  static Pulse constant(double v0);
  /// Normalised Gaussian of total area `area` centred on `center`.
  static Pulse gaussian_kick(double area, double center, double width);
  /// area * delta(t - center); only its action is defined.
  static Pulse ideal_kick(double area, double center);
  /// Piecewise-linear interpolation through samples with strictly increasing t.
  static Pulse tabulated(std::vector<PulseSample> samples);

  PulseShape shape() const noexcept { return shape_; }
  double v0() const noexcept { return v0_; }
  double omega() const noexcept { return omega_; }
  double kick_area() const noexcept { return kick_area_; }
  double kick_center() const noexcept { return kick_center_; }
  double kick_width() const noexcept { return kick_width_; }
  const std::vector<PulseSample>& samples() const noexcept { return samples_; }

  /// Harmonic only: 2 pi / omega.
  double period() const;

  /// Throws Error{IdealKickPointQuery} for an ideal kick queried at its
  /// center and Error{OutOfRange} outside a tabulated range.
  double value(double t) const;
  ActionValue area(double t) const;

 private:
  Pulse() = default;

  double tabulated_primitive(double t) const;

  PulseShape shape_ = PulseShape::Constant;
  double v0_ = 0.0;
  double omega_ = 0.0;
  double kick_area_ = 0.0;
  double kick_center_ = 0.0;
  double kick_width_ = 0.0;
  std::vector<PulseSample> samples_;
  std::vector<double> primitive_;  // cumulative integral at each sample
};

/// Harmonic drive whose first quarter period accumulates A(t0):
/// v0 = sign sqrt(n1 n2 / 2) (pi / 3) omega.
Pulse harmonic_for_condition(const TransferCondition& cond, double omega = 1.0);

/// Two-column CSV with header `t,v`.
Pulse read_tabulated_csv(std::istream& in);
Pulse read_tabulated_csv(const std::filesystem::path& path);

}  // namespace tripop
