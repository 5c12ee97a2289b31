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

#include "privstate/twisting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace privstate {

namespace {

constexpr double kOutcomeCutoff = 1e-14;

bool is_power_of_two(long v) { return v >= 1 && (v & (v - 1)) == 0; }

// Split an A,B,shield(,E) layout: equal key dims up front, any E factors
// contiguous at the end.
struct KeySplit {
  long key = 0;    // dimension of each key factor
  long shield = 1; // product of shield factor dims
  long edim = 1;   // product of E factor dims
};

KeySplit split_key_layout(const FactorLayout &layout) {
  if (layout.factor_count() < 2 || layout.parties[0] != Party::A ||
      layout.parties[1] != Party::B)
    throw ValidationError("layout must start with the A and B key factors");
  if (layout.dims[0] != layout.dims[1])
    throw ValidationError("key factors must have equal dimension");
  KeySplit ks;
  ks.key = layout.dims[0];
  bool seen_e = false;
  for (std::size_t f = 2; f < layout.factor_count(); ++f) {
    if (layout.parties[f] == Party::E) {
      seen_e = true;
      ks.edim *= layout.dims[f];
    } else {
      if (seen_e)
        throw ValidationError("environment factors must come after the shield factors");
      ks.shield *= layout.dims[f];
    }
  }
  return ks;
}

double fidelity_mat(const ComplexMatrix &a, const ComplexMatrix &b) {
  const double f = trace_norm(psd_sqrt(a) * psd_sqrt(b));
  return std::clamp(f, 0.0, 1.0);
}

// Canonical purification as a vector: psi = sum_k sqrt(lambda_k) v_k x |k>,
// with the environment index least significant.
ComplexVector purification_vector(const ComplexMatrix &m, long &edim_out) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  const long n = m.rows();
  std::vector<long> kept;
  for (long i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > kSpectralCutoff) kept.push_back(i);
  const long rank = std::max<long>(1, static_cast<long>(kept.size()));
  ComplexVector psi = ComplexVector::Zero(n * rank);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const double amp = std::sqrt(es.eigenvalues()(kept[k]));
    for (long a = 0; a < n; ++a)
      psi(a * rank + static_cast<long>(k)) += amp * es.eigenvectors()(a, kept[k]);
  }
  edim_out = rank;
  return psi;
}

// Measured ensemble of a pure vector on key x key x shield x E.
CcqEnsemble ccq_from_vector(const ComplexVector &psi, long key, long shield, long edim) {
  CcqEnsemble ens;
  const long block = shield * edim;
  for (long i = 0; i < key; ++i)
    for (long j = 0; j < key; ++j) {
      const long q = i * key + j;
      Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>
          m(psi.data() + q * block, shield, edim);
      const double p = m.squaredNorm();
      if (p <= kOutcomeCutoff) continue;
      CcqOutcome out;
      out.i = static_cast<int>(i);
      out.j = static_cast<int>(j);
      out.prob = p;
      ComplexMatrix gram = (m.adjoint() * m).transpose() / p;
      out.eve = Complex(0.5, 0.0) * (gram + gram.adjoint());
      ens.outcomes.push_back(std::move(out));
    }
  return ens;
}

// Measured ensemble straight from a density matrix that already carries an
// E factor: project onto each key pair, trace out the shield.
CcqEnsemble ccq_from_density(const ComplexMatrix &m, long key, long shield, long edim) {
  CcqEnsemble ens;
  const long block = shield * edim;
  for (long i = 0; i < key; ++i)
    for (long j = 0; j < key; ++j) {
      const long q = i * key + j;
      const auto sector = m.block(q * block, q * block, block, block);
      const double p = sector.trace().real();
      if (p <= kOutcomeCutoff) continue;
      ComplexMatrix eve = ComplexMatrix::Zero(edim, edim);
      for (long sh = 0; sh < shield; ++sh)
        eve += sector.block(sh * edim, sh * edim, edim, edim);
      CcqOutcome out;
      out.i = static_cast<int>(i);
      out.j = static_cast<int>(j);
      out.prob = p;
      out.eve = eve / p;
      ens.outcomes.push_back(std::move(out));
    }
  return ens;
}

const CcqOutcome *find_outcome(const CcqEnsemble &e, int i, int j) {
  for (const auto &o : e.outcomes)
    if (o.i == i && o.j == j) return &o;
  return nullptr;
}

} // namespace

Twist::Twist(long key_dim_, std::map<std::pair<int, int>, ComplexMatrix> blocks_)
    : key_dim(key_dim_), blocks(std::move(blocks_)) {
  if (!is_power_of_two(key_dim) || key_dim < 2)
    throw ValidationError("twist key dimension must be a power of two, at least 2");
  long sd = 0;
  for (const auto &[idx, u] : blocks) {
    if (idx.first < 0 || idx.first >= key_dim || idx.second < 0 || idx.second >= key_dim)
      throw ValidationError("twist block index outside the key basis");
    if (u.rows() != u.cols()) throw ValidationError("twist blocks must be square");
    if (sd == 0) sd = u.rows();
    if (u.rows() != sd) throw ValidationError("twist blocks must share one dimension");
    const ComplexMatrix gram = u.adjoint() * u;
    if ((gram - ComplexMatrix::Identity(sd, sd)).cwiseAbs().maxCoeff() > 1e-10)
      throw ValidationError("twist blocks must be unitary");
  }
}

long Twist::shield_dim() const {
  return blocks.empty() ? 0 : blocks.begin()->second.rows();
}

ComplexMatrix Twist::block(int i, int j, long shield_dim_) const {
  auto it = blocks.find({i, j});
  if (it != blocks.end()) return it->second;
  return ComplexMatrix::Identity(shield_dim_, shield_dim_);
}

Twist Twist::inverse() const {
  std::map<std::pair<int, int>, ComplexMatrix> inv;
  for (const auto &[idx, u] : blocks) inv.emplace(idx, u.adjoint());
  return Twist(key_dim, std::move(inv));
}

DenseState apply_twist(const DenseState &s, const Twist &t) {
  const KeySplit ks = split_key_layout(s.layout);
  if (ks.key != t.key_dim)
    throw ValidationError("twist key dimension does not match the state");
  if (t.shield_dim() != 0 && t.shield_dim() != ks.shield)
    throw ValidationError("twist shield dimension does not match the state");

  const long sectors = ks.key * ks.key;
  const long block = ks.shield * ks.edim;

  // Per-sector operators, extended by the identity on any E factors.
  std::vector<ComplexMatrix> ops(sectors);
  for (long i = 0; i < ks.key; ++i)
    for (long j = 0; j < ks.key; ++j) {
      ComplexMatrix u = t.block(static_cast<int>(i), static_cast<int>(j), ks.shield);
      ops[i * ks.key + j] =
          (ks.edim == 1) ? std::move(u) : kron(u, ComplexMatrix::Identity(ks.edim, ks.edim));
    }

  ComplexMatrix out(s.dim(), s.dim());
  for (long q = 0; q < sectors; ++q)
    for (long r = 0; r < sectors; ++r)
      out.block(q * block, r * block, block, block) =
          ops[q] * s.mat.block(q * block, r * block, block, block) * ops[r].adjoint();
  return DenseState(std::move(out), s.layout, Validation::structure);
}

CcqEnsemble ccq_state(const DenseState &s) {
  const KeySplit ks = split_key_layout(s.layout);
  if (ks.edim > 1) return ccq_from_density(s.mat, ks.key, ks.shield, ks.edim);
  long edim = 1;
  const ComplexVector psi = purification_vector(s.mat, edim);
  return ccq_from_vector(psi, ks.key, ks.shield, edim);
}

CcqEnsemble ccq_from_pure(const DenseState &pure) {
  const KeySplit ks = split_key_layout(pure.layout);
  return ccq_from_density(pure.mat, ks.key, ks.shield, ks.edim);
}

SecurityIdentity security_identity(const DenseState &s) {
  const BlockKeyState bs = dense_to_block(s);
  SecurityIdentity res;
  res.norm_x = trace_norm(bs.x);
  const CcqEnsemble ens = ccq_state(s);
  const CcqOutcome *o0 = find_outcome(ens, 0, 0);
  const CcqOutcome *o1 = find_outcome(ens, 1, 1);
  res.p0 = o0 ? o0->prob : 0.0;
  res.p1 = o1 ? o1->prob : 0.0;
  res.fid = (o0 && o1) ? fidelity_mat(o0->eve, o1->eve) : 0.0;
  res.residual = std::abs(res.norm_x - std::sqrt(res.p0 * res.p1) * res.fid);
  return res;
}

double check_lemma1(const DenseState &s, const Twist &t) {
  const KeySplit ks = split_key_layout(s.layout);
  if (ks.edim > 1)
    throw ValidationError("check_lemma1 expects a state without environment factors");
  if (ks.key != t.key_dim)
    throw ValidationError("twist key dimension does not match the state");
  if (t.shield_dim() != 0 && t.shield_dim() != ks.shield)
    throw ValidationError("twist shield dimension does not match the state");

  // One purification is fixed for both sides; the twist acts as U x I on
  // the environment, so the two ensembles share the same E space.
  long edim = 1;
  ComplexVector psi = purification_vector(s.mat, edim);
  const CcqEnsemble before = ccq_from_vector(psi, ks.key, ks.shield, edim);

  ComplexVector twisted(psi.size());
  const long block = ks.shield * edim;
  for (long i = 0; i < ks.key; ++i)
    for (long j = 0; j < ks.key; ++j) {
      const long q = i * ks.key + j;
      Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>
          m(psi.data() + q * block, ks.shield, edim);
      Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
          mt(twisted.data() + q * block, ks.shield, edim);
      mt = t.block(static_cast<int>(i), static_cast<int>(j), ks.shield) * m;
    }
  const CcqEnsemble after = ccq_from_vector(twisted, ks.key, ks.shield, edim);

  double prob_dev = 0.0;
  double state_dev = 0.0;
  for (long i = 0; i < ks.key; ++i)
    for (long j = 0; j < ks.key; ++j) {
      const CcqOutcome *a = find_outcome(before, static_cast<int>(i), static_cast<int>(j));
      const CcqOutcome *b = find_outcome(after, static_cast<int>(i), static_cast<int>(j));
      const double pa = a ? a->prob : 0.0;
      const double pb = b ? b->prob : 0.0;
      prob_dev = std::max(prob_dev, std::abs(pa - pb));
      if (a && b)
        state_dev = std::max(state_dev, 0.5 * trace_norm(a->eve - b->eve));
    }
  return prob_dev + state_dev;
}

Twist untwist_from_x(const BlockKeyState &bs) {
  const long s = bs.shield_dim();
  const PolarResult pol = polar_decompose(bs.x);
  std::map<std::pair<int, int>, ComplexMatrix> blocks;
  blocks.emplace(std::make_pair(0, 0), ComplexMatrix::Identity(s, s));
  // Corner of the twisted state is U00 x U11^dagger; choosing U11 as the
  // polar unitary turns the corner into the PSD factor sqrt(x x^dagger),
  // whose trace is the trace norm of x.
  blocks.emplace(std::make_pair(1, 1), pol.unitary);
  return Twist(2, std::move(blocks));
}

VerifyReport verify_private_state(const DenseState &s, double tol) {
  const KeySplit ks = split_key_layout(s.layout);
  if (ks.edim > 1)
    throw ValidationError("verify_private_state expects a state without environment factors");
  if (!is_power_of_two(ks.key))
    throw ValidationError("key factors must have power-of-two dimension");

  VerifyReport rep;
  rep.corner_score = std::numeric_limits<double>::quiet_NaN();

  const long key = ks.key;
  const long block = ks.shield;
  // (a) Any block involving a mismatched key pair must vanish.
  double worst_offdiag = 0.0;
  std::string worst_label;
  for (long r = 0; r < key * key; ++r)
    for (long c = 0; c < key * key; ++c) {
      const long ri = r / key, rj = r % key;
      const long ci = c / key, cj = c % key;
      if (ri == rj && ci == cj) continue;
      const double mx =
          s.mat.block(r * block, c * block, block, block).cwiseAbs().maxCoeff();
      if (mx > worst_offdiag) {
        worst_offdiag = mx;
        std::ostringstream os;
        os << "(" << ri << rj << "," << ci << cj << ")";
        worst_label = os.str();
      }
    }
  if (worst_offdiag > tol) {
    std::ostringstream os;
    os << "key-mismatched block " << worst_label << " nonzero (max abs " << worst_offdiag
       << ")";
    rep.failures.push_back(os.str());
  }

  // (b) Matched-pair outcomes must be uniform.
  const double target = 1.0 / static_cast<double>(key);
  for (long i = 0; i < key; ++i) {
    const long q = i * key + i;
    const double p = s.mat.block(q * block, q * block, block, block).trace().real();
    if (std::abs(p - target) > tol) {
      std::ostringstream os;
      os << "outcome (" << i << "," << i << ") probability " << p << " deviates from "
         << target;
      rep.failures.push_back(os.str());
      break;
    }
  }

  // (c) The environment must not distinguish the matched outcomes.
  const CcqEnsemble ens = ccq_state(s);
  std::vector<const CcqOutcome *> matched;
  for (long i = 0; i < key; ++i) {
    const CcqOutcome *o = find_outcome(ens, static_cast<int>(i), static_cast<int>(i));
    if (o) matched.push_back(o);
  }
  double min_fid = 1.0;
  for (std::size_t a = 0; a < matched.size(); ++a)
    for (std::size_t b = a + 1; b < matched.size(); ++b)
      min_fid = std::min(min_fid, fidelity_mat(matched[a]->eve, matched[b]->eve));
  rep.fidelity_deficit = 1.0 - min_fid;
  if (rep.fidelity_deficit > tol) {
    std::ostringstream os;
    os << "conditional environment states distinguishable (min pairwise fidelity "
       << min_fid << ")";
    rep.failures.push_back(os.str());
  }

  if (key == 2) {
    const double nx = trace_norm(s.mat.block(0, 3 * block, block, block));
    rep.corner_score = 0.5 - nx;
  }
  rep.ok = rep.failures.empty();
  return rep;
}

Twist random_diagonal_twist(long key_dim, long shield_dim, Rng &rng) {
  std::map<std::pair<int, int>, ComplexMatrix> blocks;
  for (long i = 0; i < key_dim; ++i)
    blocks.emplace(std::make_pair(static_cast<int>(i), static_cast<int>(i)),
                   rng.haar_unitary(shield_dim));
  return Twist(key_dim, std::move(blocks));
}

} // namespace privstate
