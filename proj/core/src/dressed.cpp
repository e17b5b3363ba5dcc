#include "tripop/dressed.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "tripop/error.hpp"

namespace tripop {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::RepeatedRoot: return "RepeatedRoot";
    case ErrorCode::ComplexRoots: return "ComplexRoots";
    case ErrorCode::SingularBasis: return "SingularBasis";
    case ErrorCode::NoConsistentX: return "NoConsistentX";
    case ErrorCode::InvalidPair: return "InvalidPair";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IdealKickPointQuery: return "IdealKickPointQuery";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NormDriftExceeded: return "NormDriftExceeded";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

namespace {

constexpr double kRootTol = 1e-9;
constexpr double kDiscriminantTol = 1e-9;
constexpr double kDetTol = 1e-9;

double sq(double v) { return v * v; }

// Stable real roots of a y^2 + b y + c = 0 (a != 0).
std::array<double, 2> solve_quadratic(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  const double ref = std::max(b * b, std::abs(4.0 * a * c));
  if (ref == 0.0) {
    throw Error(ErrorCode::RepeatedRoot, "quadratic factor has a double root at zero");
  }
  const double rel = disc / ref;
  if (rel < -kDiscriminantTol) {
    throw Error(ErrorCode::ComplexRoots, "quadratic factor has complex roots (discriminant " +
                                             std::to_string(disc) + ")");
  }
  if (rel <= kDiscriminantTol) {
    throw Error(ErrorCode::RepeatedRoot, "quadratic factor has a repeated root");
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  return {q / a, c / q};
}

Vec3 companion_roots(double a, double b, double c) {
  Eigen::Matrix3d companion;
  companion << -a, -b, -c, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
  Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
  const auto ev = solver.eigenvalues();
  Vec3 roots{};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(ev[i].imag()) > kRootTol * std::max(1.0, std::abs(ev[i].real()))) {
      throw Error(ErrorCode::ComplexRoots, "companion matrix has a complex eigenvalue");
    }
    roots[static_cast<std::size_t>(i)] = ev[i].real();
  }
  return roots;
}

// Monic cubic y^3 + a y^2 + b y + c: trigonometric form for three well
// separated real roots, companion-matrix eigenvalues near a zero discriminant.
Vec3 solve_monic_cubic(double a, double b, double c) {
  const double q = (a * a - 3.0 * b) / 9.0;
  const double r = (a * (2.0 * a * a - 9.0 * b) + 27.0 * c) / 54.0;
  const double q3 = q * q * q;
  const double disc = q3 - r * r;
  const double ref = std::max({std::abs(q3), r * r, 1e-300});
  const double rel = disc / ref;
  if (rel < -kDiscriminantTol) {
    throw Error(ErrorCode::ComplexRoots, "cubic has one real and two complex roots");
  }
  if (rel <= kDiscriminantTol) {
    return companion_roots(a, b, c);
  }
  const double theta = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
  const double scale = -2.0 * std::sqrt(q);
  const double shift = a / 3.0;
  constexpr double turn = 2.0 * std::numbers::pi;
  return {scale * std::cos(theta / 3.0) - shift, scale * std::cos((theta + turn) / 3.0) - shift,
          scale * std::cos((theta - turn) / 3.0) - shift};
}

void polish_root(const CubicCoefficients& cubic, double& y) {
  for (int it = 0; it < 3; ++it) {
    const double f = cubic(y);
    const double df = cubic.derivative(y);
    if (f == 0.0 || df == 0.0) return;
    const double next = y - f / df;
    if (std::abs(cubic(next)) >= std::abs(f)) return;
    y = next;
  }
}

double max_abs_residual(const CouplingRatios& ratios, double x, double y) {
  const auto res = fixed_point_residuals(ratios, x, y);
  return std::max(std::abs(res[0]), std::abs(res[1]));
}

// x from the y-relation, which is linear in x; the x-relation quadratic
// covers the case 1 - alpha y ~ 0.
double recover_x(const CouplingRatios& ratios, double y) {
  const double alpha = ratios.alpha;
  const double beta = ratios.beta;
  const auto& eps = ratios.eps;
  const double denom = 1.0 - alpha * y;
  if (std::abs(denom) > 1e-6 * std::max(1.0, std::abs(alpha * y))) {
    return (beta * y * y + (eps[0] - eps[2]) * y - beta) / denom;
  }
  const double qa = alpha;
  const double qb = eps[0] + beta * y - eps[1];
  const double qc = -(alpha + y);
  double best = std::numeric_limits<double>::quiet_NaN();
  double best_res = std::numeric_limits<double>::infinity();
  auto consider = [&](double x) {
    if (!std::isfinite(x)) return;
    const double res = max_abs_residual(ratios, x, y);
    if (res < best_res) {
      best_res = res;
      best = x;
    }
  };
  if (qa == 0.0) {
    if (qb != 0.0) consider(-qc / qb);
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      consider((-qb + std::sqrt(disc)) / (2.0 * qa));
      consider((-qb - std::sqrt(disc)) / (2.0 * qa));
    }
  }
  if (!std::isfinite(best)) {
    throw Error(ErrorCode::NoConsistentX, "no real x satisfies the fixed-point pair for y = " +
                                              std::to_string(y));
  }
  return best;
}

// Newton on both fixed-point relations; only accepts steps that reduce the
// residual so a good closed-form start is never made worse.
void polish_pair(const CouplingRatios& ratios, double& x, double& y) {
  const double alpha = ratios.alpha;
  const double beta = ratios.beta;
  const auto& eps = ratios.eps;
  double res = max_abs_residual(ratios, x, y);
  for (int it = 0; it < 4 && res > 0.0; ++it) {
    const auto f = fixed_point_residuals(ratios, x, y);
    const double j11 = eps[0] + 2.0 * alpha * x + beta * y - eps[1];
    const double j12 = beta * x - 1.0;
    const double j21 = alpha * y - 1.0;
    const double j22 = eps[0] + alpha * x + 2.0 * beta * y - eps[2];
    const double jdet = j11 * j22 - j12 * j21;
    if (jdet == 0.0) return;
    const double nx = x - (j22 * f[0] - j12 * f[1]) / jdet;
    const double ny = y - (-j21 * f[0] + j11 * f[1]) / jdet;
    const double nres = max_abs_residual(ratios, nx, ny);
    if (!(nres < res)) return;
    x = nx;
    y = ny;
    res = nres;
  }
}

}  // namespace

bool CouplingRatios::is_finite() const noexcept {
  return std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(eps[0]) &&
         std::isfinite(eps[1]) && std::isfinite(eps[2]);
}

Mat3 CouplingRatios::interaction_matrix() const noexcept {
  return {Vec3{eps[0], alpha, beta}, Vec3{alpha, eps[1], 1.0}, Vec3{beta, 1.0, eps[2]}};
}

double CubicCoefficients::max_magnitude() const noexcept {
  return std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
}

CubicCoefficients cubic_coefficients(const CouplingRatios& ratios) noexcept {
  const double a = ratios.alpha;
  const double b = ratios.beta;
  const double e1 = ratios.eps[0];
  const double e2 = ratios.eps[1];
  const double e3 = ratios.eps[2];
  CubicCoefficients c;
  c.c3 = (b * b - a * a) + a * b * (e2 - e3);
  c.c2 = a * (2.0 - a * a - b * b) + b * (2.0 * e1 - e2 - e3) + a * (e1 - e3) * (e2 - e3);
  c.c1 = (2.0 * a * a - b * b - 1.0) + a * b * (2.0 * e3 - e1 - e2) + (e1 - e2) * (e1 - e3);
  c.c0 = a * (b * b - 1.0) - b * (e1 - e2);
  return c;
}

Vec3 solve_cubic(const CouplingRatios& ratios) {
  if (!ratios.is_finite()) {
    throw Error(ErrorCode::InvalidArgument, "coupling ratios must be finite");
  }
  const CubicCoefficients cubic = cubic_coefficients(ratios);
  const double scale = cubic.max_magnitude();
  if (scale == 0.0) {
    throw Error(ErrorCode::RepeatedRoot, "all cubic coefficients vanish (degenerate spectrum)");
  }
  if (std::abs(cubic.c3) <= kRootTol * scale) {
    throw Error(ErrorCode::RepeatedRoot,
                "leading cubic coefficient vanishes; a dressed state has no level-1 component");
  }

  Vec3 roots{};
  if (cubic.c0 == 0.0) {
    const auto pair = solve_quadratic(cubic.c3, cubic.c2, cubic.c1);
    roots = {pair[0], pair[1], 0.0};
  } else {
    roots = solve_monic_cubic(cubic.c2 / cubic.c3, cubic.c1 / cubic.c3, cubic.c0 / cubic.c3);
  }
  for (double& y : roots) polish_root(cubic, y);

  for (double y : roots) {
    if (!(std::abs(cubic(y)) / scale < kRootTol)) {
      throw Error(ErrorCode::ComplexRoots, "root residual too large; spectrum is ill-conditioned");
    }
  }

  std::sort(roots.begin(), roots.end(), std::greater<>());
  const double spread = std::max({1.0, std::abs(roots[0]), std::abs(roots[2])});
  if (roots[0] - roots[1] <= kRootTol * spread || roots[1] - roots[2] <= kRootTol * spread) {
    throw Error(ErrorCode::RepeatedRoot, "two roots of the cubic coincide");
  }
  auto zero = std::find_if(roots.begin(), roots.end(), [](double y) { return std::abs(y) < kRootTol; });
  if (zero != roots.end()) {
    std::rotate(zero, zero + 1, roots.end());
  }
  return roots;
}

std::array<double, 2> fixed_point_residuals(const CouplingRatios& ratios, double x,
                                            double y) noexcept {
  const double z = ratios.eps[0] + ratios.alpha * x + ratios.beta * y;
  return {x * z - (ratios.alpha + ratios.eps[1] * x + y),
          y * z - (ratios.beta + x + ratios.eps[2] * y)};
}

DressedBasis build_dressed_basis(const CouplingRatios& ratios) {
  const Vec3 roots = solve_cubic(ratios);

  DressedBasis basis;
  for (std::size_t j = 0; j < 3; ++j) {
    double y = roots[j];
    double x = recover_x(ratios, y);
    polish_pair(ratios, x, y);
    const double tol = kRootTol * std::max({1.0, x * x, y * y});
    if (!(max_abs_residual(ratios, x, y) < tol)) {
      throw Error(ErrorCode::NoConsistentX,
                  "fixed-point residual " + std::to_string(max_abs_residual(ratios, x, y)) +
                      " for root y = " + std::to_string(y));
    }
    basis.x[j] = x;
    basis.y[j] = y;
    basis.z[j] = ratios.eps[0] + ratios.alpha * x + ratios.beta * y;
  }

  const auto& x = basis.x;
  const auto& y = basis.y;
  basis.det = x[0] * y[1] + x[1] * y[2] + x[2] * y[0] - x[0] * y[2] - x[1] * y[0] - x[2] * y[1];
  if (!(std::abs(basis.det) > kDetTol)) {
    throw Error(ErrorCode::SingularBasis,
                "dressed basis determinant " + std::to_string(basis.det) + " is singular");
  }
  for (std::size_t j = 0; j < 3; ++j) basis.m[j] = {1.0, x[j], y[j]};

  const double inv = 1.0 / basis.det;
  basis.m_inv = {
      Vec3{(x[1] * y[2] - x[2] * y[1]) * inv, (x[2] * y[0] - x[0] * y[2]) * inv,
           (x[0] * y[1] - x[1] * y[0]) * inv},
      Vec3{(y[1] - y[2]) * inv, (y[2] - y[0]) * inv, (y[0] - y[1]) * inv},
      Vec3{(x[2] - x[1]) * inv, (x[0] - x[2]) * inv, (x[1] - x[0]) * inv},
  };
  return basis;
}

double AmplitudeState::norm() const noexcept {
  return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
}

PopulationSample populations_of(const Amplitudes& a) noexcept {
  return {std::norm(a[0]), std::norm(a[1]), std::norm(a[2])};
}

AmplitudeState amplitudes_at(const DressedBasis& basis, double action) noexcept {
  std::array<std::complex<double>, 3> phase{};
  for (std::size_t j = 0; j < 3; ++j) phase[j] = std::polar(1.0, -basis.z[j] * action);

  AmplitudeState state;
  state.action = action;
  for (std::size_t i = 0; i < 3; ++i) {
    std::complex<double> sum{};
    for (std::size_t j = 0; j < 3; ++j) sum += basis.m_inv[i][j] * phase[j];
    state.a[i] = sum;
  }
  return state;
}

PopulationSample populations_general(const DressedBasis& basis, double action) noexcept {
  const auto& z = basis.z;
  const double c12 = std::cos((z[0] - z[1]) * action);
  const double c13 = std::cos((z[0] - z[2]) * action);
  const double c23 = std::cos((z[1] - z[2]) * action);
  auto row = [&](const Vec3& m) {
    return sq(m[0]) + sq(m[1]) + sq(m[2]) + 2.0 * m[0] * m[1] * c12 + 2.0 * m[0] * m[2] * c13 +
           2.0 * m[1] * m[2] * c23;
  };
  return {row(basis.m_inv[0]), row(basis.m_inv[1]), row(basis.m_inv[2])};
}

double effective_alpha(double alpha, double beta, double eps13) noexcept {
  const double a2 = alpha * alpha;
  return (alpha * (1.0 - a2) + alpha * eps13 * eps13 + beta * eps13) /
         (1.0 - a2 + alpha * beta * eps13);
}

}  // namespace tripop
