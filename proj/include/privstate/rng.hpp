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

#ifndef PRIVSTATE_RNG_HPP
#define PRIVSTATE_RNG_HPP

#include <cstdint>
#include <random>

#include "privstate/matrix.hpp"

namespace privstate {

// Deterministic random source. The uniform and Gaussian transforms are
// spelled out here (rather than taken from std:: distributions, whose
// algorithms are implementation-defined) so that a fixed seed yields the
// same stream on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1): top 53 bits of the engine output.
  double uniform();

  // Standard normal via the Box-Muller transform.
  double gaussian();

  Complex complex_gaussian();

  // Haar-distributed n x n unitary: QR of a complex Gaussian matrix with
  // the R-diagonal phases folded into Q.
  ComplexMatrix haar_unitary(long n);

  // Random PSD matrix G G^dagger normalized to unit trace.
  ComplexMatrix random_density(long n);

private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace privstate

#endif
