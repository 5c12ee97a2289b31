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

#include "privstate/measures.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace privstate {

namespace {

constexpr double kPptTol = 1e-10;

void reject_environment(const DenseState &s, const char *label) {
  for (std::size_t f = 0; f < s.layout.factor_count(); ++f)
    if (s.layout.parties[f] == Party::E)
      throw ValidationError(std::string(label) +
                            " expects a state without environment factors");
}

// Bob's side of the cut: B plus B' when a shield factor is present.
std::set<Party> bob_side(const DenseState &s) {
  std::set<Party> parties{Party::B};
  for (std::size_t f = 0; f < s.layout.factor_count(); ++f)
    if (s.layout.parties[f] == Party::Bp) parties.insert(Party::Bp);
  return parties;
}

double shannon_bits(const std::vector<double> &p) {
  double h = 0.0;
  for (double v : p)
    if (v > 1e-15) h -= v * std::log2(v);
  return h;
}

double spectrum_entropy(const Eigen::Ref<const ComplexMatrix> &m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (long i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    if (v > kSpectralCutoff) h -= v * std::log2(v);
  }
  return h;
}

} // namespace

double min_pt_eigenvalue(const DenseState &s) {
  reject_environment(s, "min_pt_eigenvalue");
  const ComplexMatrix pt = partial_transpose(s, bob_side(s));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pt, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_ppt(const DenseState &s) { return min_pt_eigenvalue(s) >= -kPptTol; }

double log_negativity(const DenseState &s) {
  reject_environment(s, "log_negativity");
  const ComplexMatrix pt = partial_transpose(s, bob_side(s));
  return std::max(0.0, std::log2(trace_norm(pt)));
}

double en_example1_closed(long d) {
  if (d < 2) throw ValidationError("local dimension d must be at least 2");
  return std::log2(static_cast<double>(d + 1) / static_cast<double>(d));
}

double en_hiding_closed(long d, long l) {
  const HidingPair hp = hiding_pair(d, l);
  const ComplexMatrix t0 = partial_transpose(hp.tau0, {Party::Bp});
  const ComplexMatrix t1 = partial_transpose(hp.tau1, {Party::Bp});
  return trace_norm(t0 - t1);
}

double ree_dephasing_bound(const DenseState &s) {
  const BlockKeyState bs = dense_to_block(s);
  const long sd = bs.shield_dim();

  ComplexMatrix corner(2 * sd, 2 * sd);
  corner.block(0, 0, sd, sd) = bs.d00;
  corner.block(0, sd, sd, sd) = bs.x;
  corner.block(sd, 0, sd, sd) = bs.x.adjoint();
  corner.block(sd, sd, sd, sd) = bs.d11;

  const double s_rho = spectrum_entropy(corner) + spectrum_entropy(bs.d01) +
                       spectrum_entropy(bs.d10);
  const double s_dephased = spectrum_entropy(bs.d00) + spectrum_entropy(bs.d11) +
                            spectrum_entropy(bs.d01) + spectrum_entropy(bs.d10);
  return std::max(0.0, s_dephased - s_rho);
}

double dw_rate(const CcqEnsemble &ens) {
  if (ens.outcomes.empty()) return 0.0;

  int key = 0;
  for (const auto &o : ens.outcomes) key = std::max({key, o.i + 1, o.j + 1});
  std::vector<double> pa(key, 0.0), pb(key, 0.0), pab;
  for (const auto &o : ens.outcomes) {
    pa[o.i] += o.prob;
    pb[o.j] += o.prob;
    pab.push_back(o.prob);
  }
  const double mutual =
      std::max(0.0, shannon_bits(pa) + shannon_bits(pb) - shannon_bits(pab));

  const long edim = ens.outcomes.front().eve.rows();
  ComplexMatrix avg = ComplexMatrix::Zero(edim, edim);
  double cond = 0.0;
  double total = 0.0;
  for (const auto &o : ens.outcomes) {
    if (o.eve.rows() != edim)
      throw ValidationError("conditional environment states must share one dimension");
    avg += o.prob * o.eve;
    cond += o.prob * spectrum_entropy(o.eve);
    total += o.prob;
  }
  avg /= total;
  const double holevo = std::max(0.0, spectrum_entropy(avg) - cond / total);

  return std::max(0.0, mutual - holevo);
}

std::vector<MeasureReport> measure_suite(const DenseState &s) {
  std::vector<MeasureReport> out;
  const double mineig = min_pt_eigenvalue(s);
  out.push_back({"min_pt_eigenvalue", mineig, MeasureMethod::dense, kPptTol});
  out.push_back({"is_ppt", mineig >= -kPptTol ? 1.0 : 0.0, MeasureMethod::dense, 0.0});
  out.push_back({"log_negativity", log_negativity(s), MeasureMethod::dense, 1e-9});

  try {
    const BlockKeyState bs = dense_to_block(s);
    const double ree = ree_dephasing_bound(s);
    const DenseState untwisted = apply_twist(s, untwist_from_x(bs));
    const double dw = dw_rate(ccq_state(untwisted));
    if (dw > ree + 1e-9)
      throw Error("distillable-rate estimate exceeds its relative-entropy ceiling");
    out.push_back({"ree_dephasing_bound", ree, MeasureMethod::bound, 1e-9});
    out.push_back({"dw_rate", dw, MeasureMethod::dense, 1e-9});
  } catch (const ValidationError &) {
    // Not a key-correlated state: the key measures are omitted.
  }
  return out;
}

} // namespace privstate
