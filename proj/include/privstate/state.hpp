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

#ifndef PRIVSTATE_STATE_HPP
#define PRIVSTATE_STATE_HPP

#include "privstate/layout.hpp"
#include "privstate/matrix.hpp"

namespace privstate {

// Validation depth for DenseState construction. `full` additionally runs an
// eigensolve to confirm positivity; `structure` checks shape, Hermiticity,
// and trace only and is reserved for internal steps whose output is PSD by
// construction (unitary conjugation, normalized projections).
enum class Validation { full, structure };

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

// Density matrix together with the tensor-factor layout it lives on.
struct DenseState {
  ComplexMatrix mat;
  FactorLayout layout;

  DenseState(ComplexMatrix m, FactorLayout l, Validation v = Validation::full);

  long dim() const { return mat.rows(); }
};

} // namespace privstate

#endif
