/**
 * This code is part of privstate.
 *
 * (C) Copyright privstate contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * Any modifications or derivative works of this code must retain this
 * copyright notice, and modified files need to carry a notice indicating
 * that they have been altered from the originals.
 */

#ifndef PRIVSTATE_MATRIX_HPP
#define PRIVSTATE_MATRIX_HPP

#include <complex>

#include <Eigen/Dense>

namespace privstate {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Hermiticity tolerance used for flagging and fast paths.
inline constexpr double kHermitianTol = 1e-12;

// Eigenvalues with magnitude below this are treated as exact zeros before
// logarithms and rank counts.
inline constexpr double kSpectralCutoff = 1e-12;

inline bool is_hermitian(const ComplexMatrix &m, double tol = kHermitianTol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  return (a - b).cwiseAbs().maxCoeff();
}

} // namespace privstate

#endif
