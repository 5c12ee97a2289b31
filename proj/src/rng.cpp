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

#include "privstate/rng.hpp"

#include <cmath>

namespace privstate {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

ComplexMatrix Rng::haar_unitary(long n) {
  ComplexMatrix g(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) g(r, c) = complex_gaussian();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge so the distribution is Haar: fold the phases of the R
  // diagonal into Q.
  for (long c = 0; c < n; ++c) {
    Complex rd = r(c, c);
    const double mag = std::abs(rd);
    const Complex phase = (mag > 0.0) ? rd / mag : Complex{1.0, 0.0};
    q.col(c) *= phase;
  }
  return q;
}

ComplexMatrix Rng::random_density(long n) {
  ComplexMatrix g(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) g(r, c) = complex_gaussian();
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Symmetrize away the last bits of rounding noise.
  return Complex(0.5, 0.0) * (rho + rho.adjoint());
}

} // namespace privstate
