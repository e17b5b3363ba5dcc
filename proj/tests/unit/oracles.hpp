#pragma once

// Independent reference computations used only by the tests.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "tripop/dressed.hpp"

namespace oracle {

inline Eigen::Matrix3d to_eigen(const tripop::Mat3& m) {
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = m[i][j];
  return out;
}

/// Eigenvalues of the symmetric interaction matrix, ascending.
inline std::array<double, 3> interaction_eigenvalues(const tripop::CouplingRatios& r) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(to_eigen(r.interaction_matrix()));
  const auto& v = es.eigenvalues();
  return {v(0), v(1), v(2)};
}

/// a(A) = exp(-i W A) (1, 0, 0) by diagonalising W.
inline tripop::PopulationSample matrix_exponential_populations(const tripop::CouplingRatios& r,
                                                               double action) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(to_eigen(r.interaction_matrix()));
  const Eigen::Matrix3d& v = es.eigenvectors();
  std::array<std::complex<double>, 3> a{};
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      a[i] += v(i, k) * v(0, k) * std::exp(std::complex<double>(0.0, -es.eigenvalues()(k) * action));
    }
  }
  return {std::norm(a[0]), std::norm(a[1]), std::norm(a[2])};
}

/// Real roots of c3 y^3 + c2 y^2 + c1 y + c0 from the companion matrix, ascending.
inline std::vector<double> companion_roots(const tripop::CubicCoefficients& c) {
  Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
  comp(0, 0) = -c.c2 / c.c3;
  comp(0, 1) = -c.c1 / c.c3;
  comp(0, 2) = -c.c0 / c.c3;
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  Eigen::EigenSolver<Eigen::Matrix3d> es(comp);
  std::vector<double> out;
  for (int i = 0; i < 3; ++i) out.push_back(es.eigenvalues()(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

inline double max_abs_diff(const tripop::PopulationSample& a, const tripop::PopulationSample& b) {
  return std::max({std::abs(a.p1 - b.p1), std::abs(a.p2 - b.p2), std::abs(a.p3 - b.p3)});
}

}  // namespace oracle
