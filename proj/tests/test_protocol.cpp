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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "privstate/measures.hpp"
#include "privstate/protocol.hpp"
#include "privstate/states.hpp"
#include "privstate/tensor_ops.hpp"
#include "privstate/twisting.hpp"
#include "support.hpp"

using namespace privstate;

namespace {

double block_diff(const BlockKeyState &a, const BlockKeyState &b) {
  double dev = max_abs_diff(a.d00, b.d00);
  dev = std::max(dev, max_abs_diff(a.d01, b.d01));
  dev = std::max(dev, max_abs_diff(a.d10, b.d10));
  dev = std::max(dev, max_abs_diff(a.d11, b.d11));
  dev = std::max(dev, max_abs_diff(a.x, b.x));
  return dev;
}

} // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((ProtocolParams{0.0, 2, 1, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((ProtocolParams{0.6, 2, 1, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((ProtocolParams{0.3, 1, 1, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((ProtocolParams{0.3, 2, 0, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((ProtocolParams{0.3, 2, 1, 0}.validate()), ValidationError);
  CHECK_NOTHROW((ProtocolParams{0.5, 2, 1, 3}.validate()));
}

TEST_CASE("the sufficient positivity condition") {
  CHECK(ppt_condition_flag(1.0 / 3.0, 2, 1));
  CHECK(ppt_condition_flag(0.3, 2, 1));
  CHECK_FALSE(ppt_condition_flag(0.4, 2, 1));
  CHECK_FALSE(ppt_condition_flag(1.0 / 3.0, 2, 2)); // sqrt(2) * 1 < 2
  CHECK(ppt_condition_flag(1.0 / 3.0, 4, 2));       // sqrt(2) * 3 >= 4
}

TEST_CASE("recombining two strictly private copies keeps perfect privacy") {
  Rng rng(51);
  const ComplexMatrix v = rng.haar_unitary(4);
  const Twist t(2, {{{0, 0}, v}, {{1, 1}, v}});
  const DenseState shield = DenseState(
      rng.random_density(4), FactorLayout{{2, 2}, {Party::Ap, Party::Bp}});
  const DenseState gamma = private_state(1, t, shield);
  const BlockKeyState bs = dense_to_block(gamma);

  auto [out, success] = recurrence_step_block(bs, bs);
  CHECK(success == doctest::Approx(1.0).epsilon(1e-10));
  const DenseState dense_out = block_to_dense(out);
  CHECK(verify_private_state(dense_out).ok);
  CHECK(trace_norm(out.x) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("block recombination matches the dense simulation") {
  const BlockKeyState raw = raw_key_state(1.0 / 3.0, 2, 1);
  auto [block_out, block_success] = recurrence_step_block(raw, raw);
  CHECK(block_success == doctest::Approx(5.0 / 9.0).epsilon(1e-12));

  const DenseState single = block_to_dense(raw);
  auto [dense_out, dense_success] = recurrence_step_dense(single, single);
  CHECK(std::abs(dense_success - block_success) < 1e-12);
  CHECK(max_abs_diff(block_to_dense(block_out).mat, dense_out.mat) < 1e-10);
}

TEST_CASE("recombining dephased copies creates no coherence") {
  const BlockKeyState raw = raw_key_state(1.0 / 3.0, 2, 1);
  const BlockKeyState dephased(raw.d00, raw.d01, raw.d10, raw.d11,
                               ComplexMatrix::Zero(4, 4), raw.shield_layout);
  auto [out, success] = recurrence_step_block(dephased, dephased);
  CHECK(success > 0.0);
  CHECK(out.x.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("dense recombination: bare keys and classical agreement") {
  const DenseState bell = max_entangled(2);
  auto [out, success] = recurrence_step_dense(bell, bell);
  CHECK(success == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_abs_diff(out.mat, bell.mat) < 1e-12);

  // Postselection keeps the pair when the copies have equal key parity, so
  // for classical inputs with parity-0 weight q and q' the success
  // probability is q q' + (1-q)(1-q').
  const double q = 0.7, qp = 0.4;
  ComplexMatrix da = ComplexMatrix::Zero(4, 4);
  da(0, 0) = q;     // |00>
  da(1, 1) = 1 - q; // |01>
  ComplexMatrix db = ComplexMatrix::Zero(4, 4);
  db(0, 0) = qp;
  db(1, 1) = 1 - qp;
  const FactorLayout keys{{2, 2}, {Party::A, Party::B}};
  auto [out2, agree] =
      recurrence_step_dense(DenseState(da, keys), DenseState(db, keys));
  CHECK(agree == doctest::Approx(q * qp + (1 - q) * (1 - qp)).epsilon(1e-12));
}

TEST_CASE("closed-form n-copy state: base case, pairing case, and trace") {
  const BlockKeyState raw = raw_key_state(1.0 / 3.0, 2, 1);
  const BlockKeyState one = n_copy_closed_form({1.0 / 3.0, 2, 1, 1});
  CHECK(block_diff(one, raw) < 1e-14);

  auto [paired, success] = recurrence_step_block(raw, raw);
  const BlockKeyState two = n_copy_closed_form({1.0 / 3.0, 2, 1, 2});
  CHECK(block_diff(paired, two) < 1e-10);
  CHECK(success > 0.0);

  for (long n : {1L, 2L, 3L}) {
    const BlockKeyState s = n_copy_closed_form({0.3, 2, 1, n});
    const double trace = (s.d00.trace() + s.d01.trace() + s.d10.trace() +
                          s.d11.trace())
                             .real();
    CHECK(trace == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("closed-form corner norm values") {
  // 0.5 * 0.75^2 / (1 + (2/3)^2) at p = 0.3, l = 2, n = 2.
  CHECK(off_diag_norm({0.3, 2, 2, 2}) ==
        doctest::Approx(0.19471153846153846).epsilon(1e-12));
  // Large n with a long shield chain approaches 1/2 when p > 1/4.
  CHECK(off_diag_norm({0.3, 2, 20, 64}) >= 0.499);
  // Below p = 1/4 the ratio term explodes and the norm collapses.
  CHECK(off_diag_norm({0.2, 2, 20, 64}) < 1e-9);
}

TEST_CASE("dense corner norm equals the closed form") {
  CHECK(std::abs(norm_x_dense({1.0 / 3.0, 2, 1, 1}) -
                 off_diag_norm({1.0 / 3.0, 2, 1, 1})) < 1e-9);
  CHECK(norm_x_dense({1.0 / 3.0, 2, 1, 1}) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(std::abs(norm_x_dense({1.0 / 3.0, 2, 1, 2}) -
                 off_diag_norm({1.0 / 3.0, 2, 1, 2})) < 1e-9);
  CHECK(norm_x_dense({0.5, 2, 1, 1}) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("smallest feasible shield dimension") {
  CHECK(feasible_params(1.0 / 3.0, 1) == 2);
  CHECK(feasible_params(1.0 / 3.0, 2) == 4);
  CHECK_FALSE(feasible_params(0.4, 1).has_value());
}

TEST_CASE("pipeline records: positivity point and the half-weight point") {
  const SweepRecord rec = run_pipeline({1.0 / 3.0, 2, 1, 1});
  CHECK(rec.ppt_condition);
  REQUIRE(rec.en_bound.has_value());
  CHECK(std::abs(*rec.en_bound) < 1e-9);
  REQUIRE(rec.dw_rate.has_value());
  CHECK(*rec.dw_rate == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rec.note.empty());

  // At p = 1/2 the raw state has no key-error sectors; its measured rate
  // equals the dephasing bound exactly.
  const SweepRecord half = run_pipeline({0.5, 2, 1, 1});
  REQUIRE(half.dw_rate.has_value());
  CHECK(*half.dw_rate == doctest::Approx(0.3112781244591329).epsilon(1e-9));
}

TEST_CASE("pipeline skips dense stages beyond the cap with a note") {
  // d = 2, l = 2, n = 3: dense dimension 4 * 16^3 = 16384 > 4096.
  const SweepRecord rec = run_pipeline({0.3, 2, 2, 3});
  CHECK(rec.ppt_condition == ppt_condition_flag(0.3, 2, 2));
  CHECK(rec.norm_x == doctest::Approx(off_diag_norm({0.3, 2, 2, 3})).epsilon(1e-12));
  CHECK_FALSE(rec.en_bound.has_value());
  CHECK_FALSE(rec.dw_rate.has_value());
  CHECK(!rec.note.empty());
}

TEST_CASE("property: closed form equals dense corner norm over the grid") {
  for (double p : {0.25, 0.3, 1.0 / 3.0})
    for (long l : {1L, 2L})
      for (long n : {1L, 2L})
        CHECK(std::abs(norm_x_dense({p, 2, l, n}) - off_diag_norm({p, 2, l, n})) <
              1e-9);
}

TEST_CASE("property: corner norm grows with n in the high-weight regime") {
  for (double p : {0.26, 0.3, 1.0 / 3.0}) {
    double prev = off_diag_norm({p, 2, 20, 1});
    for (long n = 2; n <= 12; ++n) {
      const double cur = off_diag_norm({p, 2, 20, n});
      CHECK(cur > prev);
      prev = cur;
    }
    CHECK(prev <= 0.5 + 1e-12);
  }
}

TEST_CASE("property: recombination cannot create negativity beyond two copies") {
  // LOCC + postselection spot check at a non-positive parameter point.
  const BlockKeyState raw = raw_key_state(0.45, 2, 1);
  const double single = log_negativity(block_to_dense(raw));
  auto [paired, success] = recurrence_step_block(raw, raw);
  CHECK(success > 0.0);
  const double doubled = log_negativity(block_to_dense(paired));
  CHECK(doubled <= 2.0 * single + 1e-9);
  CHECK(single > 1e-3); // the point is genuinely negative under transposition
}

TEST_CASE("property: the sufficient condition certifies the n-copy outputs") {
  for (double p : {0.3, 1.0 / 3.0})
    for (long n : {1L, 2L}) {
      REQUIRE(ppt_condition_flag(p, 2, 1));
      const DenseState dense = block_to_dense(n_copy_closed_form({p, 2, 1, n}));
      CHECK(min_pt_eigenvalue(dense) >= -1e-10);
    }
}

TEST_CASE("property: sweep records stay inside the corner-norm range") {
  // n = 8 exceeds the dense cap, so that point exercises the closed-form-only
  // path; the small n values also run the dense stages.
  for (double p : {0.25, 1.0 / 3.0, 0.5})
    for (long n : {1L, 2L, 3L, 8L}) {
      const SweepRecord rec = run_pipeline({p, 2, 1, n});
      CHECK(rec.norm_x >= 0.0);
      CHECK(rec.norm_x <= 0.5 + 1e-12);
    }
}
