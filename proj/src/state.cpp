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

#include "privstate/state.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace privstate {

namespace {
std::atomic<long> g_dense_dim_cap{4096};
} // namespace

long dense_dim_cap() { return g_dense_dim_cap.load(); }

void set_dense_dim_cap(long cap) {
  if (cap < 2) throw ValidationError("dense dimension cap must be at least 2");
  g_dense_dim_cap.store(cap);
}

void check_dim_cap(long dim, const std::string &what) {
  const long cap = dense_dim_cap();
  if (dim > cap) {
    std::ostringstream os;
    os << what << " requires dense dimension " << dim
       << ", exceeding the dimension cap " << cap
       << " (override with PRIVSTATE_DIM_CAP)";
    throw DimensionCapError(os.str());
  }
}

std::string party_name(Party p) {
  switch (p) {
    case Party::A: return "A";
    case Party::B: return "B";
    case Party::Ap: return "A'";
    case Party::Bp: return "B'";
    case Party::E: return "E";
  }
  return "?";
}

Party parse_party(const std::string &name) {
  if (name == "A") return Party::A;
  if (name == "B") return Party::B;
  if (name == "A'") return Party::Ap;
  if (name == "B'") return Party::Bp;
  if (name == "E") return Party::E;
  throw ValidationError("unknown party label: " + name);
}

FactorLayout::FactorLayout(std::vector<long> dims_, std::vector<Party> parties_)
    : dims(std::move(dims_)), parties(std::move(parties_)) {
  if (dims.size() != parties.size())
    throw ValidationError("factor layout needs one party label per factor");
  if (dims.empty()) throw ValidationError("factor layout must have at least one factor");
  for (long d : dims)
    if (d < 1) throw ValidationError("factor dimensions must be positive");
}

long FactorLayout::total_dim() const {
  long n = 1;
  for (long d : dims) n *= d;
  return n;
}

FactorLayout FactorLayout::without(const std::vector<std::size_t> &discard) const {
  std::vector<bool> drop(dims.size(), false);
  for (std::size_t f : discard) {
    if (f >= dims.size()) throw ValidationError("factor index out of range");
    drop[f] = true;
  }
  std::vector<long> nd;
  std::vector<Party> np;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (!drop[f]) {
      nd.push_back(dims[f]);
      np.push_back(parties[f]);
    }
  }
  if (nd.empty()) throw ValidationError("cannot discard every factor");
  return FactorLayout(std::move(nd), std::move(np));
}

FactorLayout FactorLayout::permuted(const std::vector<std::size_t> &perm) const {
  if (perm.size() != dims.size())
    throw ValidationError("permutation length must match factor count");
  std::vector<bool> seen(dims.size(), false);
  std::vector<long> nd(dims.size());
  std::vector<Party> np(dims.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const std::size_t f = perm[i];
    if (f >= dims.size() || seen[f])
      throw ValidationError("factor permutation must be a bijection");
    seen[f] = true;
    nd[i] = dims[f];
    np[i] = parties[f];
  }
  return FactorLayout(std::move(nd), std::move(np));
}

bool FactorLayout::operator==(const FactorLayout &other) const {
  return dims == other.dims && parties == other.parties;
}

FactorLayout concat(const FactorLayout &a, const FactorLayout &b) {
  std::vector<long> nd = a.dims;
  nd.insert(nd.end(), b.dims.begin(), b.dims.end());
  std::vector<Party> np = a.parties;
  np.insert(np.end(), b.parties.begin(), b.parties.end());
  return FactorLayout(std::move(nd), std::move(np));
}

DenseState::DenseState(ComplexMatrix m, FactorLayout l, Validation v)
    : mat(std::move(m)), layout(std::move(l)) {
  if (mat.rows() != mat.cols())
    throw ValidationError("density matrix must be square");
  if (mat.rows() != layout.total_dim())
    throw ValidationError("matrix dimension does not match factor layout");
  if (!is_hermitian(mat, 1e-9))
    throw ValidationError("density matrix must be Hermitian");
  const double tr = mat.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw ValidationError("density matrix trace must be 1 (got " + std::to_string(tr) + ")");
  if (v == Validation::full) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -kPsdTol)
      throw ValidationError("density matrix must be positive semidefinite (min eigenvalue " +
                            std::to_string(lo) + ")");
  }
}

} // namespace privstate
