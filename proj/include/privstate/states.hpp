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

#ifndef PRIVSTATE_STATES_HPP
#define PRIVSTATE_STATES_HPP

#include <optional>

#include "privstate/state.hpp"
#include "privstate/tensor_ops.hpp"

namespace privstate {

struct Twist; // defined in twisting.hpp

// Key-correlated state in compact block form: the four diagonal key-sector
// blocks plus the coherence corner between the 00 and 11 sectors, all
// operators on the shield space.
struct BlockKeyState {
  ComplexMatrix d00, d01, d10, d11;
  ComplexMatrix x;
  FactorLayout shield_layout;

  BlockKeyState(ComplexMatrix d00_, ComplexMatrix d01_, ComplexMatrix d10_,
                ComplexMatrix d11_, ComplexMatrix x_, FactorLayout shield,
                Validation v = Validation::full);

  long shield_dim() const { return d00.rows(); }
};

// A pair of separable states with a large global trace distance: tensor
// powers of the extreme Werner states and their balanced mixture.
struct HidingPair {
  DenseState tau0;
  DenseState tau1;
  long d;
  long l;
};

enum class WernerKind { sym, asym };

// Projector state (1/sqrt(d)) sum_i |ii> on an A,B factor pair.
DenseState max_entangled(long d);

// Extreme Werner states: normalized projectors onto the symmetric or
// antisymmetric subspace of a d x d pair (labeled A', B').
DenseState werner_extreme(long d, WernerKind kind);

// tau0 = sym^(x l), tau1 = ((sym+asym)/2)^(x l), factors arranged so all
// A'-halves precede all B'-halves.
HidingPair hiding_pair(long d, long l);

// U (max_entangled(2^m) x shield) U^dagger for the controlled unitary U.
DenseState private_state(int m, const Twist &twist, const DenseState &shield);

// p psi+ x sym + (1-p) psi- x asym on AB x A'B'; p defaults to (1+1/d)/2.
DenseState example1_state(long d, std::optional<double> p = std::nullopt);

// (1/2) psi+ x tau0 + (1/2) psi- x tau1 with the hiding pair as shields.
DenseState example2_state(long d, long l);

// Noisy key-correlated block state: d00 = d11 = (p/2)(tau0+tau1),
// d01 = d10 = (1/2-p) tau0, x = (p/2)(tau1-tau0).
BlockKeyState raw_key_state(double p, long d, long l);

// Expand the five blocks into the 4s x 4s density matrix.
DenseState block_to_dense(const BlockKeyState &bs);

// Extract the five blocks; rejects states whose forbidden key-sector blocks
// are nonzero, naming the first offending block.
BlockKeyState dense_to_block(const DenseState &s);

} // namespace privstate

#endif
