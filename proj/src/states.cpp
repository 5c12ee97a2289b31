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

#include "privstate/states.hpp"

#include <cmath>
#include <sstream>

#include "privstate/twisting.hpp"

namespace privstate {

namespace {

void check_block_dims(const ComplexMatrix &m, long s, const char *name) {
  if (m.rows() != s || m.cols() != s)
    throw ValidationError(std::string("block ") + name + " has wrong dimensions");
}

// Bell-type projectors (|00> +/- |11>)/sqrt(2) on a 2x2 key pair.
ComplexMatrix bell_projector(int sign) {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = 1.0 / std::sqrt(2.0);
  v(3) = sign / std::sqrt(2.0);
  return v * v.adjoint();
}

} // namespace

BlockKeyState::BlockKeyState(ComplexMatrix d00_, ComplexMatrix d01_, ComplexMatrix d10_,
                             ComplexMatrix d11_, ComplexMatrix x_, FactorLayout shield,
                             Validation v)
    : d00(std::move(d00_)), d01(std::move(d01_)), d10(std::move(d10_)),
      d11(std::move(d11_)), x(std::move(x_)), shield_layout(std::move(shield)) {
  const long s = shield_layout.total_dim();
  check_block_dims(d00, s, "d00");
  check_block_dims(d01, s, "d01");
  check_block_dims(d10, s, "d10");
  check_block_dims(d11, s, "d11");
  check_block_dims(x, s, "x");
  for (const auto *m : {&d00, &d01, &d10, &d11})
    if (!is_hermitian(*m, 1e-9))
      throw ValidationError("diagonal key-sector blocks must be Hermitian");
  const double tr =
      d00.trace().real() + d01.trace().real() + d10.trace().real() + d11.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw ValidationError("block traces must sum to 1 (got " + std::to_string(tr) + ")");

  if (v == Validation::full) {
    // The dense expansion is block diagonal in the key sectors except for
    // the (00,11) corner; positivity is equivalent to positivity of d01,
    // d10, and the coupled 2x2 block operator.
    auto min_eig = [](const ComplexMatrix &m) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
      return es.eigenvalues().minCoeff();
    };
    if (min_eig(d01) < -kPsdTol || min_eig(d10) < -kPsdTol)
      throw ValidationError("key-error blocks must be positive semidefinite");
    ComplexMatrix corner(2 * s, 2 * s);
    corner.topLeftCorner(s, s) = d00;
    corner.topRightCorner(s, s) = x;
    corner.bottomLeftCorner(s, s) = x.adjoint();
    corner.bottomRightCorner(s, s) = d11;
    if (min_eig(corner) < -kPsdTol)
      throw ValidationError("key-sector corner operator must be positive semidefinite");
    const double bound =
        std::sqrt(std::max(0.0, d00.trace().real() * d11.trace().real()));
    if (trace_norm(x) > bound + 1e-10)
      throw ValidationError("corner block norm exceeds sqrt(Tr d00 * Tr d11)");
  }
}

DenseState max_entangled(long d) {
  if (d < 2) throw ValidationError("max_entangled requires d >= 2");
  check_dim_cap(d * d, "max_entangled");
  ComplexVector v = ComplexVector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (long i = 0; i < d; ++i) v(i * d + i) = amp;
  return DenseState(v * v.adjoint(), FactorLayout({d, d}, {Party::A, Party::B}),
                    Validation::structure);
}

DenseState werner_extreme(long d, WernerKind kind) {
  if (d < 2) throw ValidationError("werner_extreme requires d >= 2");
  check_dim_cap(d * d, "werner_extreme");
  ComplexMatrix swap = ComplexMatrix::Zero(d * d, d * d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
  const ComplexMatrix eye = ComplexMatrix::Identity(d * d, d * d);
  ComplexMatrix m;
  if (kind == WernerKind::sym)
    m = (eye + swap) / static_cast<double>(d * d + d);
  else
    m = (eye - swap) / static_cast<double>(d * d - d);
  return DenseState(std::move(m), FactorLayout({d, d}, {Party::Ap, Party::Bp}),
                    Validation::structure);
}

HidingPair hiding_pair(long d, long l) {
  if (d < 2) throw ValidationError("hiding_pair requires d >= 2");
  if (l < 1) throw ValidationError("hiding_pair requires l >= 1");
  long dim = 1;
  for (long k = 0; k < l; ++k) {
    dim *= d * d;
    check_dim_cap(dim, "hiding_pair"); // early exit keeps the product in range
  }

  const DenseState sym = werner_extreme(d, WernerKind::sym);
  const DenseState asym = werner_extreme(d, WernerKind::asym);
  ComplexMatrix mix_mat = 0.5 * (sym.mat + asym.mat);

  ComplexMatrix t0 = sym.mat;
  ComplexMatrix t1 = mix_mat;
  std::vector<long> dims = {d, d};
  std::vector<Party> parties = {Party::Ap, Party::Bp};
  for (long k = 1; k < l; ++k) {
    t0 = kron(t0, sym.mat);
    t1 = kron(t1, mix_mat);
    dims.insert(dims.end(), {d, d});
    parties.insert(parties.end(), {Party::Ap, Party::Bp});
  }
  DenseState tau0(std::move(t0), FactorLayout(dims, parties), Validation::structure);
  DenseState tau1(std::move(t1), FactorLayout(dims, parties), Validation::structure);

  // Reorder the interleaved copies so all A'-halves precede all B'-halves.
  std::vector<std::size_t> perm;
  for (long k = 0; k < l; ++k) perm.push_back(2 * k);
  for (long k = 0; k < l; ++k) perm.push_back(2 * k + 1);
  return HidingPair{permute_factors(tau0, perm), permute_factors(tau1, perm), d, l};
}

DenseState private_state(int m, const Twist &twist, const DenseState &shield) {
  if (m < 1) throw ValidationError("private_state requires m >= 1");
  const long key = 1L << m;
  check_dim_cap(key * key * shield.dim(), "private_state");
  if (twist.key_dim != key)
    throw ValidationError("twist key dimension does not match 2^m");
  DenseState base(kron(max_entangled(key).mat, shield.mat),
                  concat(FactorLayout({key, key}, {Party::A, Party::B}), shield.layout),
                  Validation::structure);
  return apply_twist(base, twist);
}

DenseState example1_state(long d, std::optional<double> p_opt) {
  if (d < 2) throw ValidationError("example1_state requires d >= 2");
  check_dim_cap(4 * d * d, "example1_state");
  const double p = p_opt.value_or(0.5 * (1.0 + 1.0 / static_cast<double>(d)));
  if (p < 0.0 || p > 1.0)
    throw ValidationError("example1_state requires mixing weight p in [0, 1]");
  const DenseState sym = werner_extreme(d, WernerKind::sym);
  const DenseState asym = werner_extreme(d, WernerKind::asym);
  ComplexMatrix m = p * kron(bell_projector(+1), sym.mat) +
                    (1.0 - p) * kron(bell_projector(-1), asym.mat);
  FactorLayout layout =
      concat(FactorLayout({2, 2}, {Party::A, Party::B}), sym.layout);
  return DenseState(std::move(m), std::move(layout), Validation::structure);
}

DenseState example2_state(long d, long l) {
  HidingPair hp = hiding_pair(d, l);
  check_dim_cap(4 * hp.tau0.dim(), "example2_state");
  ComplexMatrix m = 0.5 * kron(bell_projector(+1), hp.tau0.mat) +
                    0.5 * kron(bell_projector(-1), hp.tau1.mat);
  FactorLayout layout =
      concat(FactorLayout({2, 2}, {Party::A, Party::B}), hp.tau0.layout);
  return DenseState(std::move(m), std::move(layout), Validation::structure);
}

BlockKeyState raw_key_state(double p, long d, long l) {
  if (!(p > 0.0 && p <= 0.5))
    throw ValidationError("raw_key_state requires 0 < p <= 1/2");
  HidingPair hp = hiding_pair(d, l);
  check_dim_cap(4 * hp.tau0.dim(), "raw_key_state");
  ComplexMatrix diag_key = 0.5 * p * (hp.tau0.mat + hp.tau1.mat);
  ComplexMatrix diag_err = (0.5 - p) * hp.tau0.mat;
  ComplexMatrix corner = 0.5 * p * (hp.tau1.mat - hp.tau0.mat);
  return BlockKeyState(diag_key, diag_err, diag_err, diag_key, corner,
                       hp.tau0.layout);
}

DenseState block_to_dense(const BlockKeyState &bs) {
  const long s = bs.shield_dim();
  ComplexMatrix m = ComplexMatrix::Zero(4 * s, 4 * s);
  m.block(0 * s, 0 * s, s, s) = bs.d00;
  m.block(1 * s, 1 * s, s, s) = bs.d01;
  m.block(2 * s, 2 * s, s, s) = bs.d10;
  m.block(3 * s, 3 * s, s, s) = bs.d11;
  m.block(0 * s, 3 * s, s, s) = bs.x;
  m.block(3 * s, 0 * s, s, s) = bs.x.adjoint();
  FactorLayout layout =
      concat(FactorLayout({2, 2}, {Party::A, Party::B}), bs.shield_layout);
  return DenseState(std::move(m), std::move(layout), Validation::structure);
}

BlockKeyState dense_to_block(const DenseState &s) {
  if (s.layout.factor_count() < 2 || s.layout.dims[0] != 2 || s.layout.dims[1] != 2 ||
      s.layout.parties[0] != Party::A || s.layout.parties[1] != Party::B)
    throw ValidationError("dense_to_block requires a 2x2 A,B key part in front");
  const long sd = s.dim() / 4;
  auto block = [&](int r, int c) { return s.mat.block(r * sd, c * sd, sd, sd); };

  // Only the four key-diagonal blocks and the (00,11) coherence corner may
  // be populated.
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      if (r == c || (r == 0 && c == 3) || (r == 3 && c == 0)) continue;
      const double mx = block(r, c).cwiseAbs().maxCoeff();
      if (mx > 1e-10) {
        std::ostringstream os;
        os << "state is not key-correlated: block (" << (r >> 1) << (r & 1) << ","
           << (c >> 1) << (c & 1) << ") has max abs entry " << mx;
        throw ValidationError(os.str());
      }
    }
  FactorLayout shield =
      s.layout.factor_count() == 2
          ? FactorLayout{{1}, {Party::Ap}} // key-only state: trivial shield
          : s.layout.without({0, 1});
  return BlockKeyState(block(0, 0), block(1, 1), block(2, 2), block(3, 3), block(0, 3),
                       std::move(shield), Validation::structure);
}

} // namespace privstate
