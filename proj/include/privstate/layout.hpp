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

#ifndef PRIVSTATE_LAYOUT_HPP
#define PRIVSTATE_LAYOUT_HPP

#include <string>
#include <vector>

#include "privstate/errors.hpp"

namespace privstate {

// Owner of a tensor factor. A and B hold the key qubits, Ap ("A'") and
// Bp ("B'") the shield halves, E the purifying environment.
enum class Party { A, B, Ap, Bp, E };

std::string party_name(Party p);
Party parse_party(const std::string &name);

// Ordered tensor-factor dimensions with one party label per factor.
struct FactorLayout {
  std::vector<long> dims;
  std::vector<Party> parties;

  FactorLayout() = default;
  FactorLayout(std::vector<long> dims_, std::vector<Party> parties_);

  long total_dim() const;
  std::size_t factor_count() const { return dims.size(); }

  // Layout of the factors that survive after discarding `discard`.
  FactorLayout without(const std::vector<std::size_t> &discard) const;

  // Layout with factors reordered by perm (perm[i] = index of the input
  // factor that lands in output slot i).
  FactorLayout permuted(const std::vector<std::size_t> &perm) const;

  bool operator==(const FactorLayout &other) const;
};

// Concatenation: factors of a followed by factors of b.
FactorLayout concat(const FactorLayout &a, const FactorLayout &b);

} // namespace privstate

#endif
