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

#include "privstate/protocol.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "privstate/measures.hpp"
#include "privstate/twisting.hpp"

namespace privstate {

namespace {

constexpr double kSuccessFloor = 1e-12;

void check_two_level_keys(const DenseState &s, const char *label) {
  if (s.layout.factor_count() < 2 || s.layout.parties[0] != Party::A ||
      s.layout.parties[1] != Party::B || s.layout.dims[0] != 2 || s.layout.dims[1] != 2)
    throw ValidationError(std::string(label) +
                          " expects a state whose first two factors are 2-level A and B keys");
  for (std::size_t f = 2; f < s.layout.factor_count(); ++f)
    if (s.layout.parties[f] == Party::E)
      throw ValidationError(std::string(label) +
                            " expects a state without environment factors");
}

} // namespace

bool ppt_condition_flag(double p, long d, long l) {
  if (p > 1.0 / 3.0 + 1e-12) return false;
  const double c = std::pow((1.0 - p) / p, 1.0 / static_cast<double>(l));
  return c * static_cast<double>(d - 1) >= static_cast<double>(d) - 1e-9;
}

void ProtocolParams::validate() const {
  if (!(p > 0.0) || p > 0.5)
    throw ValidationError("mixing weight p must lie in (0, 1/2]");
  if (d < 2) throw ValidationError("local shield dimension d must be at least 2");
  if (l < 1) throw ValidationError("shield pair count l must be at least 1");
  if (n < 1) throw ValidationError("copy count n must be at least 1");
}

std::pair<BlockKeyState, double> recurrence_step_block(const BlockKeyState &a,
                                                       const BlockKeyState &b) {
  const long sa = a.shield_dim();
  const long sb = b.shield_dim();
  check_dim_cap(4 * sa * sb, "recurrence_step_block");

  const ComplexMatrix o00 = kron(a.d00, b.d00 + b.d11);
  const ComplexMatrix o01 = kron(a.d01, b.d01 + b.d10);
  const ComplexMatrix o10 = kron(a.d10, b.d10 + b.d01);
  const ComplexMatrix o11 = kron(a.d11, b.d11 + b.d00);
  const ComplexMatrix ox = kron(a.x, b.x + b.x.adjoint());

  const double success =
      (o00.trace() + o01.trace() + o10.trace() + o11.trace()).real();
  if (success < kSuccessFloor)
    throw ValidationError("recurrence step has vanishing success probability");

  BlockKeyState out(o00 / success, o01 / success, o10 / success, o11 / success,
                    ox / success, concat(a.shield_layout, b.shield_layout),
                    Validation::full);
  return {std::move(out), success};
}

std::pair<DenseState, double> recurrence_step_dense(const DenseState &a,
                                                    const DenseState &b) {
  check_two_level_keys(a, "recurrence_step_dense");
  check_two_level_keys(b, "recurrence_step_dense");
  check_dim_cap(a.dim() * b.dim(), "recurrence_step_dense");

  // Joint state with both key pairs in front: A1 B1 A2 B2 shields.
  const std::size_t fa = a.layout.factor_count();
  const std::size_t fb = b.layout.factor_count();
  ComplexMatrix joint = kron(a.mat, b.mat);
  FactorLayout joint_layout = concat(a.layout, b.layout);
  std::vector<std::size_t> perm = {0, 1, fa, fa + 1};
  for (std::size_t f = 2; f < fa; ++f) perm.push_back(f);
  for (std::size_t f = fa + 2; f < fa + fb; ++f) perm.push_back(f);
  DenseState ordered =
      permute_factors(DenseState(std::move(joint), joint_layout, Validation::structure), perm);

  const long total = ordered.dim();
  const long shield = total / 16;

  // Both sides add their first key into their second one; in the computational
  // basis this is a permutation of indices.
  std::vector<long> map(total);
  for (long v = 0; v < total; ++v) {
    const long sh = v % shield;
    const long key = v / shield;
    const long j2 = key & 1;
    const long i2 = (key >> 1) & 1;
    const long j1 = (key >> 2) & 1;
    const long i1 = (key >> 3) & 1;
    const long key2 = (i1 << 3) | (j1 << 2) | ((i2 ^ i1) << 1) | (j2 ^ j1);
    map[v] = key2 * shield + sh;
  }
  ComplexMatrix added(total, total);
  for (long r = 0; r < total; ++r)
    for (long c = 0; c < total; ++c) added(map[r], map[c]) = ordered.mat(r, c);

  // Keep the runs where the measured pair agrees, summing over its value.
  const long out_dim = total / 4;
  ComplexMatrix kept = ComplexMatrix::Zero(out_dim, out_dim);
  for (long q = 0; q < 4; ++q)
    for (long r = 0; r < 4; ++r)
      for (long alpha = 0; alpha < 2; ++alpha)
        kept.block(q * shield, r * shield, shield, shield) +=
            added.block((q * 4 + 3 * alpha) * shield, (r * 4 + 3 * alpha) * shield,
                        shield, shield);

  const double success = kept.trace().real();
  if (success < kSuccessFloor)
    throw ValidationError("recurrence step has vanishing success probability");
  kept /= success;

  std::vector<long> out_dims = {2, 2};
  std::vector<Party> out_parties = {Party::A, Party::B};
  for (std::size_t f = 2; f < fa; ++f) {
    out_dims.push_back(a.layout.dims[f]);
    out_parties.push_back(a.layout.parties[f]);
  }
  for (std::size_t f = 2; f < fb; ++f) {
    out_dims.push_back(b.layout.dims[f]);
    out_parties.push_back(b.layout.parties[f]);
  }
  DenseState out(std::move(kept), FactorLayout{std::move(out_dims), std::move(out_parties)},
                 Validation::structure);
  return {std::move(out), success};
}

BlockKeyState n_copy_closed_form(const ProtocolParams &params) {
  params.validate();

  long shield = 1;
  for (long k = 0; k < params.l; ++k) {
    shield *= params.d * params.d;
    check_dim_cap(4 * shield, "n_copy_closed_form");
  }
  long dense_dim = 4;
  for (long k = 0; k < params.n; ++k) {
    if (dense_dim > dense_dim_cap() / shield + 1) dense_dim = dense_dim_cap() + 1;
    else dense_dim *= shield;
    check_dim_cap(dense_dim, "n_copy_closed_form");
  }

  const BlockKeyState raw = raw_key_state(params.p, params.d, params.l);
  ComplexMatrix k00 = raw.d00, k01 = raw.d01, k10 = raw.d10, k11 = raw.d11, kx = raw.x;
  FactorLayout shield_layout = raw.shield_layout;
  for (long c = 1; c < params.n; ++c) {
    k00 = kron(k00, raw.d00);
    k01 = kron(k01, raw.d01);
    k10 = kron(k10, raw.d10);
    k11 = kron(k11, raw.d11);
    kx = kron(kx, raw.x);
    shield_layout = concat(shield_layout, raw.shield_layout);
  }
  const double norm = 2.0 * std::pow(params.p, params.n) +
                      2.0 * std::pow(0.5 - params.p, params.n);
  return BlockKeyState(k00 / norm, k01 / norm, k10 / norm, k11 / norm, kx / norm,
                       std::move(shield_layout), Validation::full);
}

double off_diag_norm(const ProtocolParams &params) {
  params.validate();
  const double r = (1.0 - 2.0 * params.p) / (2.0 * params.p);
  const double shrink = 1.0 - std::pow(2.0, -static_cast<double>(params.l));
  return 0.5 * std::pow(shrink, params.n) / (1.0 + std::pow(r, params.n));
}

double norm_x_dense(const ProtocolParams &params) {
  return trace_norm(n_copy_closed_form(params).x);
}

std::optional<long> feasible_params(double p, long l) {
  if (!(p > 0.0) || p > 0.5)
    throw ValidationError("mixing weight p must lie in (0, 1/2]");
  if (l < 1) throw ValidationError("shield pair count l must be at least 1");
  if (p > 1.0 / 3.0 + 1e-12) return std::nullopt;
  const double c = std::pow((1.0 - p) / p, 1.0 / static_cast<double>(l));
  if (c <= 1.0 + 1e-12) return std::nullopt;
  const double d0 = c / (c - 1.0);
  long d = std::max<long>(2, static_cast<long>(std::floor(d0)) - 1);
  for (; d <= static_cast<long>(std::ceil(d0)) + 2; ++d)
    if (c * static_cast<double>(d - 1) >= static_cast<double>(d) - 1e-9) return d;
  return std::nullopt;
}

SweepRecord run_pipeline(const ProtocolParams &params) {
  params.validate();
  SweepRecord rec;
  rec.params = params;
  rec.ppt_condition = ppt_condition_flag(params.p, params.d, params.l);
  rec.norm_x = off_diag_norm(params);

  const double shield = std::pow(static_cast<double>(params.d) * params.d,
                                 static_cast<double>(params.l));
  const double dense_dim = 4.0 * std::pow(shield, static_cast<double>(params.n));
  if (dense_dim > static_cast<double>(dense_dim_cap()) + 0.5) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "dense stages skipped: dimension %.0f exceeds cap %ld", dense_dim,
                  dense_dim_cap());
    rec.note = buf;
    return rec;
  }

  const BlockKeyState bs = n_copy_closed_form(params);
  const DenseState dense = block_to_dense(bs);
  rec.en_bound = log_negativity(dense);

  const Twist tw = untwist_from_x(bs);
  const DenseState untwisted = apply_twist(dense, tw);
  rec.dw_rate = dw_rate(ccq_state(untwisted));
  return rec;
}

} // namespace privstate
