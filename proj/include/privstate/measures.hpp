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

#ifndef PRIVSTATE_MEASURES_HPP
#define PRIVSTATE_MEASURES_HPP

#include <string>
#include <vector>

#include "privstate/twisting.hpp"

namespace privstate {

enum class MeasureMethod { closed_form, dense, bound };

struct MeasureReport {
  std::string name;
  double value = 0.0;
  MeasureMethod method = MeasureMethod::dense;
  double tolerance = 0.0;
};

// Positive partial transpose across the (A, A') vs (B, B') cut.
bool is_ppt(const DenseState &s);

// Smallest eigenvalue of the partial transpose (diagnostic for is_ppt).
double min_pt_eigenvalue(const DenseState &s);

// log2 of the trace norm of the partial transpose, clamped at 0.
double log_negativity(const DenseState &s);

// Closed form log2((d+1)/d) for the orthogonal-flag Werner mixture.
double en_example1_closed(long d);

// Dense evaluation of || tau0^G - tau1^G ||_1 for the hiding pair, where G
// transposes the B' halves.
double en_hiding_closed(long d, long l);

// Key-basis pinching bound S(pinch(rho)) - S(rho): an upper bound on the
// relative entropy of entanglement whenever the pinched state is separable.
double ree_dephasing_bound(const DenseState &s);

// Distillable-key lower bound I(A:B) - chi(E) of a measured ensemble,
// floored at 0; the Holevo quantity is taken over the joint-outcome
// ensemble.
double dw_rate(const CcqEnsemble &e);

// Bundle of all applicable measures for one state. For reference (not
// computed here): the antisymmetric-subspace Werner state has entanglement
// cost exactly 1 while its regularized relative-entropy bound is
// log2((d+2)/d), so the bound chain E_D <= K_D <= E_r can be loose.
std::vector<MeasureReport> measure_suite(const DenseState &s);

} // namespace privstate

#endif
