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

#ifndef PRIVSTATE_TENSOR_OPS_HPP
#define PRIVSTATE_TENSOR_OPS_HPP

#include <set>
#include <utility>
#include <vector>

#include "privstate/state.hpp"

namespace privstate {

// Kronecker product.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

// Reorder tensor factors; perm[i] is the input factor landing in slot i.
DenseState permute_factors(const DenseState &s, const std::vector<std::size_t> &perm);

// Trace out the listed factors; the result lives on the remaining ones.
DenseState partial_trace(const DenseState &s, const std::vector<std::size_t> &discard);

// Transpose every factor owned by one of the listed parties.
ComplexMatrix partial_transpose(const DenseState &s, const std::set<Party> &parties);

// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
struct EigResult {
  RealVector values;        // descending
  ComplexMatrix vectors;    // columns matching `values`
};
EigResult hermitian_eig(const ComplexMatrix &m);

// Sum of singular values (eigenvalue magnitudes on the Hermitian fast path).
double trace_norm(const ComplexMatrix &m);

// Uhlmann fidelity Tr |sqrt(r) sqrt(s)|, symmetric, in [0, 1].
double fidelity(const DenseState &r, const DenseState &s);

// -sum lambda log2 lambda with small eigenvalues clamped to zero.
double von_neumann_entropy(const DenseState &r);

// Tr[r (log2 r - log2 s)]; +infinity when support(r) leaves support(s).
double relative_entropy(const DenseState &r, const DenseState &s);

// x = unitary * positive. On a rank-deficient input the unitary acts as the
// identity on the kernel when the left and right null spaces coincide (the
// Hermitian case), and is completed from the full SVD otherwise.
struct PolarResult {
  ComplexMatrix unitary;
  ComplexMatrix positive;
};
PolarResult polar_decompose(const ComplexMatrix &x);

// Canonical purification: appends one E factor of dimension rank(r) so that
// tracing it out recovers r.
DenseState purify(const DenseState &r);

// Principal square root of a PSD matrix (negative noise eigenvalues clamped).
ComplexMatrix psd_sqrt(const ComplexMatrix &m);

} // namespace privstate

#endif
