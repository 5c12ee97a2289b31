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

#ifndef PRIVSTATE_REPRODUCE_HPP
#define PRIVSTATE_REPRODUCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace privstate {

// The quantitative claims the toolkit can re-derive on demand, each pairing
// a closed-form value with an independent dense evaluation.
enum class ReproduceTarget {
  eq13,              // closed-form corner norm vs dense trace norm
  ppt_condition,     // positive partial transpose of the noisy key family
  lemma1,            // measured-ensemble invariance under random twists
  en_example1,       // log-negativity of the flagged Werner mixture
  en_example2,       // log-negativity of the hiding-pair mixture
  security_identity, // corner norm vs sqrt(p0 p1) x environment fidelity
  theorem2_chain,    // key-rate lower bound vs pinching upper bound
};

const char *reproduce_target_name(ReproduceTarget t);
std::optional<ReproduceTarget> parse_reproduce_target(const std::string &name);
std::vector<std::string> reproduce_target_names();

struct ReproduceRow {
  std::string label;
  double closed_form = 0.0;
  double numeric = 0.0;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Evaluate one target. Randomized rows draw from a generator seeded with
// `seed`, so equal seeds give identical rows.
std::vector<ReproduceRow> reproduce_rows(ReproduceTarget t, std::uint64_t seed);

// Full report text: a header line naming the target and seed, then one CSV
// row per check with round-trip decimal formatting.
std::string reproduce_report(ReproduceTarget t, std::uint64_t seed);

} // namespace privstate

#endif
