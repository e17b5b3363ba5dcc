#pragma once

// Dressed-state solution of the degenerate three-level atom.
//
// All couplings share one time dependence V(t) = V23(t); the interaction
// matrix is V(t) * W with
//
//       | eps1  alpha  beta |
//   W = | alpha eps2   1    |
//       | beta  1      eps3 |
//
// A dressed amplitude c = a1 + x a2 + y a3 evolves as exp(-i z A(t)), where
// A(t) is the action integral of V. The (x, y, z) triples are found from a
// cubic in y; the amplitudes follow from inverting the matrix with rows
// (1, x_j, y_j).

#include <array>
#include <complex>

namespace tripop {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;
using Amplitudes = std::array<std::complex<double>, 3>;

/// Shape of the interaction: V12/V23, V13/V23 and Vjj/V23.
struct CouplingRatios {
  double alpha = 0.0;
  double beta = 1.0;
  Vec3 eps{0.0, 0.0, 0.0};

  bool is_finite() const noexcept;
  bool has_zero_diagonal() const noexcept { return eps[0] == 0.0 && eps[1] == 0.0 && eps[2] == 0.0; }

  /// The interaction matrix W (so that i da/dt = V(t) W a).
  Mat3 interaction_matrix() const noexcept;
};

/// Coefficients of c3 y^3 + c2 y^2 + c1 y + c0 = 0 for general diagonal
/// ratios. Reduces to the eps = 0 cubic when all eps vanish.
struct CubicCoefficients {
  double c3 = 0.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  double operator()(double y) const noexcept { return ((c3 * y + c2) * y + c1) * y + c0; }
  double derivative(double y) const noexcept { return (3.0 * c3 * y + 2.0 * c2) * y + c1; }
  double max_magnitude() const noexcept;
};

CubicCoefficients cubic_coefficients(const CouplingRatios& ratios) noexcept;

/// Three distinct real roots of the y-cubic. A root with |y| < 1e-9 is
/// placed last; the others are sorted descending.
///
/// Throws Error{RepeatedRoot} when the cubic degenerates (vanishing leading
/// coefficient, e.g. a decoupled level) or two roots coincide, and
/// Error{ComplexRoots} when the discriminant is negative.
Vec3 solve_cubic(const CouplingRatios& ratios);

struct DressedBasis {
  Vec3 x{};
  Vec3 y{};
  Vec3 z{};
  double det = 0.0;
  Mat3 m{};      // rows (1, x_j, y_j)
  Mat3 m_inv{};  // a_i = sum_j m_inv[i][j] c_j
};

/// Residuals of the two fixed-point relations for one (x, y) pair:
///   x (eps1 + alpha x + beta y) - (alpha + eps2 x + y)
///   y (eps1 + alpha x + beta y) - (beta + x + eps3 y)
std::array<double, 2> fixed_point_residuals(const CouplingRatios& ratios, double x, double y) noexcept;

/// Throws Error{SingularBasis} when |det| <= 1e-9 and Error{NoConsistentX}
/// when a root admits no x satisfying both fixed-point relations.
DressedBasis build_dressed_basis(const CouplingRatios& ratios);

struct AmplitudeState {
  double action = 0.0;
  Amplitudes a{};

  double norm() const noexcept;
};

struct PopulationSample {
  double p1 = 1.0;
  double p2 = 0.0;
  double p3 = 0.0;

  double total() const noexcept { return p1 + p2 + p3; }
  double operator[](int level) const noexcept { return level == 1 ? p1 : (level == 2 ? p2 : p3); }
};

PopulationSample populations_of(const Amplitudes& a) noexcept;

/// a_i(A) = sum_j m_inv[i][j] exp(-i z_j A), starting from a = (1, 0, 0).
AmplitudeState amplitudes_at(const DressedBasis& basis, double action) noexcept;

/// The cosine-sum form P_k = sum_ij m_inv[k][i] m_inv[k][j] cos((z_i - z_j) A).
/// Even in the action.
PopulationSample populations_general(const DressedBasis& basis, double action) noexcept;

/// For eps1 = eps2 != eps3 and beta = +-1 the nonzero roots satisfy
/// y^2 + alpha_eff y - 2 = 0; returns alpha_eff. `eps13` is eps1 - eps3.
double effective_alpha(double alpha, double beta, double eps13) noexcept;

}  // namespace tripop
