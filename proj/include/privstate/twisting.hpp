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

#ifndef PRIVSTATE_TWISTING_HPP
#define PRIVSTATE_TWISTING_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "privstate/rng.hpp"
#include "privstate/states.hpp"

namespace privstate {

// Controlled unitary U = sum_{ij} |ij><ij| x U_ij acting on the shield,
// with the control taken in the AB computational basis. Blocks absent from
// the map default to the identity.
struct Twist {
  long key_dim = 2; // 2^m
  std::map<std::pair<int, int>, ComplexMatrix> blocks;

  Twist(long key_dim_, std::map<std::pair<int, int>, ComplexMatrix> blocks_);

  long shield_dim() const;
  ComplexMatrix block(int i, int j, long shield_dim) const;
  Twist inverse() const;
};

// Outcome distribution of the AB computational-basis measurement together
// with the environment's conditional state for each outcome.
struct CcqOutcome {
  int i = 0;
  int j = 0;
  double prob = 0.0;
  ComplexMatrix eve; // conditional state on E
};

struct CcqEnsemble {
  std::vector<CcqOutcome> outcomes;
};

// Conjugate by the controlled unitary; E factors, when present, are acted
// on by the identity.
DenseState apply_twist(const DenseState &s, const Twist &t);

// Measure AB on a purification of s, trace out the shield, and collect the
// conditional environment states.
CcqEnsemble ccq_state(const DenseState &s);

// Same measurement applied to an already-pure state carrying an E factor.
CcqEnsemble ccq_from_pure(const DenseState &pure);

// Both sides of the coherence-vs-distinguishability identity
// ||x||_1 = sqrt(p0 p1) F(eve0, eve1), evaluated independently.
struct SecurityIdentity {
  double norm_x = 0.0;
  double p0 = 0.0;
  double p1 = 0.0;
  double fid = 0.0;
  double residual = 0.0;
};
SecurityIdentity security_identity(const DenseState &s);

// Maximum outcome-probability deviation plus maximum conditional-state
// trace distance between the measured ensembles of s and of the twisted s.
// A single purification of s is fixed and the twist is extended by the
// identity on E, so the comparison is between the same environment.
double check_lemma1(const DenseState &s, const Twist &t);

// Diagonal-controlled twist with U00 = I and U11 the polar unitary of the
// corner, making the twisted corner PSD with trace ||x||_1.
Twist untwist_from_x(const BlockKeyState &bs);

// Operational private-state test: key-sector off-diagonal blocks vanish,
// key outcomes are uniform over the matched pairs, and all pairwise
// conditional-environment fidelities reach 1.
struct VerifyReport {
  bool ok = false;
  std::vector<std::string> failures;
  // Distance-like scores exposed raw: corner deficit 1/2 - ||x||_1 (only
  // for one key bit; NaN otherwise) and 1 - min pairwise fidelity.
  double corner_score = 0.0;
  double fidelity_deficit = 0.0;
};
VerifyReport verify_private_state(const DenseState &s, double tol = 1e-9);

// Seeded random diagonal-controlled twist (Haar blocks on the diagonal).
Twist random_diagonal_twist(long key_dim, long shield_dim, Rng &rng);

} // namespace privstate

#endif
