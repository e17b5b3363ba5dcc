#include "tripop/pulse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "tripop/error.hpp"
#include "tripop/transfer.hpp"

namespace tripop {

namespace {

double step(double s) { return s > 0.0 ? 1.0 : 0.0; }

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_number(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ": not a number: '" + text + "'");
  }
}

}  // namespace

Pulse Pulse::harmonic(double v0, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega) || !std::isfinite(v0)) {
    throw Error(ErrorCode::InvalidArgument, "harmonic pulse needs finite v0 and omega > 0");
  }
  Pulse p;
  p.shape_ = PulseShape::Harmonic;
  p.v0_ = v0;
  p.omega_ = omega;
  return p;
}

Pulse Pulse::constant(double v0) {
  if (!std::isfinite(v0)) throw Error(ErrorCode::InvalidArgument, "constant pulse needs finite v0");
  Pulse p;
  p.shape_ = PulseShape::Constant;
  p.v0_ = v0;
  return p;
}

Pulse Pulse::gaussian_kick(double area, double center, double width) {
  if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(area) || !std::isfinite(center)) {
    throw Error(ErrorCode::InvalidArgument, "gaussian kick needs finite area/center and width > 0");
  }
  Pulse p;
  p.shape_ = PulseShape::GaussianKick;
  p.kick_area_ = area;
  p.kick_center_ = center;
  p.kick_width_ = width;
  return p;
}

Pulse Pulse::ideal_kick(double area, double center) {
  if (!std::isfinite(area) || !std::isfinite(center)) {
    throw Error(ErrorCode::InvalidArgument, "ideal kick needs finite area and center");
  }
  Pulse p;
  p.shape_ = PulseShape::IdealKick;
  p.kick_area_ = area;
  p.kick_center_ = center;
  return p;
}

Pulse Pulse::tabulated(std::vector<PulseSample> samples) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "tabulated pulse needs at least two samples");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].t) || !std::isfinite(samples[i].v)) {
      throw Error(ErrorCode::InvalidArgument, "tabulated pulse samples must be finite");
    }
    if (i > 0 && !(samples[i].t > samples[i - 1].t)) {
      throw Error(ErrorCode::InvalidArgument, "tabulated times must be strictly increasing");
    }
  }
  Pulse p;
  p.shape_ = PulseShape::Tabulated;
  p.samples_ = std::move(samples);
  p.primitive_.resize(p.samples_.size(), 0.0);
  for (std::size_t i = 1; i < p.samples_.size(); ++i) {
    const auto& a = p.samples_[i - 1];
    const auto& b = p.samples_[i];
    p.primitive_[i] = p.primitive_[i - 1] + 0.5 * (a.v + b.v) * (b.t - a.t);
  }
  return p;
}

double Pulse::period() const {
  if (shape_ != PulseShape::Harmonic) {
    throw Error(ErrorCode::InvalidArgument, "only harmonic pulses have a period");
  }
  return 2.0 * std::numbers::pi / omega_;
}

double Pulse::value(double t) const {
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "time must be finite");
  switch (shape_) {
    case PulseShape::Harmonic:
      return v0_ * std::cos(omega_ * t);
    case PulseShape::Constant:
      return v0_;
    case PulseShape::GaussianKick: {
      const double u = (t - kick_center_) / kick_width_;
      if (std::abs(u) > kKickTruncation) return 0.0;
      return kick_area_ / (kick_width_ * std::sqrt(2.0 * std::numbers::pi)) * std::exp(-0.5 * u * u);
    }
    case PulseShape::IdealKick:
      if (t == kick_center_) {
        throw Error(ErrorCode::IdealKickPointQuery, "an ideal kick has no value at its center");
      }
      return 0.0;
    case PulseShape::Tabulated: {
      if (t < samples_.front().t || t > samples_.back().t) {
        throw Error(ErrorCode::OutOfRange, "time " + std::to_string(t) + " outside tabulated range");
      }
      auto hi = std::upper_bound(samples_.begin(), samples_.end(), t,
                                 [](double tt, const PulseSample& s) { return tt < s.t; });
      if (hi == samples_.end()) return samples_.back().v;
      const auto& b = *hi;
      const auto& a = *(hi - 1);
      const double w = (t - a.t) / (b.t - a.t);
      return a.v + w * (b.v - a.v);
    }
  }
  return 0.0;
}

double Pulse::tabulated_primitive(double t) const {
  if (t < samples_.front().t || t > samples_.back().t) {
    throw Error(ErrorCode::OutOfRange, "time " + std::to_string(t) + " outside tabulated range");
  }
  auto hi = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](double tt, const PulseSample& s) { return tt < s.t; });
  if (hi == samples_.end()) return primitive_.back();
  const auto idx = static_cast<std::size_t>(hi - samples_.begin()) - 1;
  const auto& a = samples_[idx];
  const double dt = t - a.t;
  const double slope = (hi->v - a.v) / (hi->t - a.t);
  return primitive_[idx] + a.v * dt + 0.5 * slope * dt * dt;
}

ActionValue Pulse::area(double t) const {
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "time must be finite");
  double a = 0.0;
  switch (shape_) {
    case PulseShape::Harmonic:
      a = v0_ / omega_ * std::sin(omega_ * t);
      break;
    case PulseShape::Constant:
      a = v0_ * t;
      break;
    case PulseShape::GaussianKick: {
      const double lo = kick_center_ - kKickTruncation * kick_width_;
      const double hi = kick_center_ + kKickTruncation * kick_width_;
      auto cdf = [&](double s) {
        const double c = std::clamp(s, lo, hi);
        return 0.5 * kick_area_ * std::erf((c - kick_center_) / (std::sqrt(2.0) * kick_width_));
      };
      a = cdf(t) - cdf(0.0);
      break;
    }
    case PulseShape::IdealKick:
      a = kick_area_ * (step(t - kick_center_) - step(-kick_center_));
      break;
    case PulseShape::Tabulated:
      a = tabulated_primitive(t) - tabulated_primitive(0.0);
      break;
  }
  return {t, a};
}

Pulse harmonic_for_condition(const TransferCondition& cond, double omega) {
  if (!(omega > 0.0)) throw Error(ErrorCode::InvalidArgument, "omega must be positive");
  const double v0 = cond.sign * std::sqrt(static_cast<double>(cond.product()) / 2.0) *
                    (std::numbers::pi / 3.0) * omega;
  return Pulse::harmonic(v0, omega);
}

Pulse read_tabulated_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<PulseSample> samples;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      std::string compact;
      for (char c : line) {
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
      }
      if (compact != "t,v") {
        throw Error(ErrorCode::ParseError, "expected header 't,v', got '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected two columns");
    }
    samples.push_back({parse_number(trim(line.substr(0, comma)), line_no),
                       parse_number(trim(line.substr(comma + 1)), line_no)});
  }
  if (!header_seen) throw Error(ErrorCode::ParseError, "empty pulse table");
  try {
    return Pulse::tabulated(std::move(samples));
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Pulse read_tabulated_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_tabulated_csv(in);
}

}  // namespace tripop
