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

#ifndef PRIVSTATE_PROTOCOL_HPP
#define PRIVSTATE_PROTOCOL_HPP

#include <optional>
#include <string>

#include "privstate/states.hpp"

namespace privstate {

struct ProtocolParams {
  double p = 1.0 / 3.0;
  long d = 2;
  long l = 1;
  long n = 1;

  void validate() const;
};

// One reporting row of a parameter sweep. en_bound and dw_rate are absent
// when the dense stages would exceed the dimension cap.
struct SweepRecord {
  ProtocolParams params;
  bool ppt_condition = false;
  double norm_x = 0.0;
  std::optional<double> en_bound;
  std::optional<double> dw_rate;
  std::string note; // reason for absent fields; empty when complete
};

// True when the closed-form sufficient test for a positive partial transpose
// of the raw-key family holds: p <= 1/3 and ((1-p)/p)^(1/l) (d-1) >= d.
bool ppt_condition_flag(double p, long d, long l);

// Postselected two-copy recombination on block states: both parties add
// their first-copy key bit onto the second copy, the second-copy key pair
// is measured, and the state is kept on agreement. Returns the kept state
// (shields of both copies retained) and the success probability.
std::pair<BlockKeyState, double> recurrence_step_block(const BlockKeyState &a,
                                                       const BlockKeyState &b);

// Brute-force dense simulation of the same map.
std::pair<DenseState, double> recurrence_step_dense(const DenseState &a,
                                                    const DenseState &b);

// Closed-form n-copy output: every block is the n-fold tensor power of the
// single-copy block, normalized by 2 p^n + 2 (1/2 - p)^n.
BlockKeyState n_copy_closed_form(const ProtocolParams &params);

// Closed-form corner norm (1/2)(1 - 2^-l)^n / (1 + ((1-2p)/(2p))^n).
double off_diag_norm(const ProtocolParams &params);

// Corner trace norm of the n-copy block state, evaluated densely.
double norm_x_dense(const ProtocolParams &params);

// Smallest d >= 2 whose parameters admit a positive partial transpose by
// the sufficient condition p <= 1/3 and ((1-p)/p)^(1/l) (d-1) >= d.
std::optional<long> feasible_params(double p, long l);

// Full pipeline for one parameter point: sufficient-condition flag, closed
// -form corner norm, and (dense-cap permitting) the log-negativity of the
// n-copy state and the distillable-key lower bound of its measured
// ensemble after untwisting.
SweepRecord run_pipeline(const ProtocolParams &params);

} // namespace privstate

#endif
