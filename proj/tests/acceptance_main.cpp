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

// Acceptance gate: ten numbered end-to-end checks, each printing exactly one
// PASS/FAIL line with the measured numbers. The process exit code is the
// number of failing checks. Two checks (3 and 5) encode target values that
// the implemented mathematics does not reach; they are expected to FAIL and
// the printed details show the true values (see README).

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "privstate/measures.hpp"
#include "privstate/protocol.hpp"
#include "privstate/reproduce.hpp"
#include "privstate/states.hpp"
#include "privstate/tensor_ops.hpp"
#include "privstate/twisting.hpp"
#include "support.hpp"

using namespace privstate;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

double block_diff(const BlockKeyState &a, const BlockKeyState &b) {
  double dev = max_abs_diff(a.d00, b.d00);
  dev = std::max(dev, max_abs_diff(a.d01, b.d01));
  dev = std::max(dev, max_abs_diff(a.d10, b.d10));
  dev = std::max(dev, max_abs_diff(a.d11, b.d11));
  dev = std::max(dev, max_abs_diff(a.x, b.x));
  return dev;
}

// Random key-correlated test state: pinch a random 8-dimensional density
// onto the key sectors, keeping the coherence between the 00 and 11 sectors.
DenseState random_key_correlated(Rng &rng) {
  const ComplexMatrix full = rng.random_density(8);
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  for (int q = 0; q < 4; ++q)
    m.block(2 * q, 2 * q, 2, 2) = full.block(2 * q, 2 * q, 2, 2);
  m.block(0, 6, 2, 2) = full.block(0, 6, 2, 2);
  m.block(6, 0, 2, 2) = full.block(6, 0, 2, 2);
  return DenseState(std::move(m), FactorLayout{{2, 2, 2}, {Party::A, Party::B, Party::Ap}},
                    Validation::structure);
}

double measured_rate(const DenseState &s) {
  const BlockKeyState bs = dense_to_block(s);
  const DenseState untwisted = apply_twist(s, untwist_from_x(bs));
  return dw_rate(ccq_state(untwisted));
}

// 1. Closed-form corner norm equals the dense evaluation over the small grid.
Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  int points = 0;
  for (double p : {0.25, 0.3, 1.0 / 3.0})
    for (long l : {1L, 2L})
      for (long n : {1L, 2L}) {
        const ProtocolParams params{p, 2, l, n};
        worst = std::max(worst,
                         std::abs(norm_x_dense(params) - off_diag_norm(params)));
        ++points;
      }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-9 && secs <= 10.0,
          fmt("max |dense - closed| = %.3g over %d grid points in %.2f s "
              "(tolerance 1e-9, budget 10 s)",
              worst, points, secs)};
}

// 2. The noisy-key family is PPT at the two reference parameter points.
Outcome criterion2() {
  double worst_eig = 0.0, worst_neg = 0.0;
  for (double p : {1.0 / 3.0, 0.3}) {
    const DenseState s = block_to_dense(raw_key_state(p, 2, 1));
    worst_eig = std::min(worst_eig, min_pt_eigenvalue(s));
    worst_neg = std::max(worst_neg, log_negativity(s));
  }
  return {worst_eig >= -1e-10 && worst_neg <= 1e-9,
          fmt("min transpose eigenvalue = %.3g (>= -1e-10), log-negativity = %.3g "
              "(<= 1e-9)",
              worst_eig, worst_neg)};
}

// 3. Key rate from a transpose-positive point after one pairing round, plus
// the closed-form tail of the corner norm. The middle two clauses state
// targets the family cannot meet at shield length 1 (the measured rate is 0
// and the corner norm shrinks); the honest numbers are printed.
Outcome criterion3() {
  const SweepRecord rec = run_pipeline({1.0 / 3.0, 2, 1, 2});
  const bool ppt_ok =
      rec.ppt_condition && is_ppt(block_to_dense(n_copy_closed_form({1.0 / 3.0, 2, 1, 2})));
  const double dw = rec.dw_rate.value_or(-1.0);
  const double nx1 = off_diag_norm({1.0 / 3.0, 2, 1, 1});
  const double nx2 = off_diag_norm({1.0 / 3.0, 2, 1, 2});
  const double tail = off_diag_norm({0.3, 2, 20, 64});
  const bool pass = ppt_ok && dw > 0.0 && nx2 > nx1 && tail >= 0.499;
  return {pass, fmt("ppt = %s; dw_rate = %.6g (needs > 0); corner norm n=2 %.6g vs "
                    "n=1 %.6g (needs growth); tail norm = %.6g (>= 0.499)",
                    ppt_ok ? "true" : "false", dw, nx2, nx1, tail)};
}

// 4. Orthogonal-flag mixture: closed-form negativity and verified privacy.
Outcome criterion4() {
  double worst = 0.0;
  bool verified = true;
  for (long d = 2; d <= 4; ++d) {
    const DenseState s = example1_state(d);
    worst = std::max(worst, std::abs(log_negativity(s) -
                                     std::log2((d + 1.0) / d)));
    verified = verified && verify_private_state(s, 1e-9).ok;
  }
  return {worst <= 1e-9 && verified,
          fmt("max |E_N - log2((d+1)/d)| = %.3g for d in {2,3,4}; verification %s",
              worst, verified ? "passed" : "failed")};
}

// 5. Hiding-pair mixture. The first clause demands that the negativity equal
// the transposed-pair gap itself; the computed value is log2(1 + gap/2),
// which is strictly smaller, so the clause cannot be met and the true
// numbers are printed. The second clause (trace distance of the pair) holds.
Outcome criterion5() {
  double worst_en = 0.0, worst_tn = 0.0;
  std::ostringstream vals;
  for (long l : {1L, 2L}) {
    const double en = log_negativity(example2_state(2, l));
    const double gap = en_hiding_closed(2, l);
    worst_en = std::max(worst_en, std::abs(en - gap));
    const HidingPair hp = hiding_pair(2, l);
    const double tn = trace_norm(hp.tau1.mat - hp.tau0.mat);
    worst_tn = std::max(worst_tn,
                        std::abs(tn - (2.0 - std::pow(2.0, 1.0 - l))));
    vals << (l == 1 ? "" : "; ") << "l=" << l << ": E_N = " << en
         << ", gap = " << gap;
  }
  return {worst_en <= 1e-9 && worst_tn <= 1e-9,
          fmt("max |E_N - gap| = %.3g (needs <= 1e-9; %s); pair trace-distance "
              "deviation = %.3g (<= 1e-9)",
              worst_en, vals.str().c_str(), worst_tn)};
}

// 6. Measured-ensemble invariance under random controlled twists.
Outcome criterion6() {
  Rng rng(0);
  const DenseState e1 = example1_state(2);
  const DenseState rawd = block_to_dense(raw_key_state(1.0 / 3.0, 2, 1));
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Twist t = random_diagonal_twist(2, 4, rng);
    worst = std::max(worst, check_lemma1(e1, t));
    worst = std::max(worst, check_lemma1(rawd, t));
  }
  return {worst <= 1e-9,
          fmt("max ccq deviation = %.3g over 20 random twists x 2 states "
              "(tolerance 1e-9)",
              worst)};
}

// 7. Corner norm equals sqrt(p0 p1) times the environment fidelity.
Outcome criterion7() {
  std::vector<DenseState> states;
  states.push_back(example1_state(2));
  states.push_back(example1_state(3));
  states.push_back(example2_state(2, 1));
  states.push_back(example2_state(2, 2));
  for (double p : {0.25, 1.0 / 3.0, 0.45, 0.5})
    states.push_back(block_to_dense(raw_key_state(p, 2, 1)));
  Rng rng(0);
  for (int k = 0; k < 20; ++k) states.push_back(random_key_correlated(rng));

  double worst = 0.0;
  for (const DenseState &s : states)
    worst = std::max(worst, security_identity(s).residual);
  return {worst <= 1e-9,
          fmt("max |corner norm - sqrt(p0 p1) fidelity| = %.3g over %zu states "
              "(tolerance 1e-9)",
              worst, states.size())};
}

// 8. The block pairing step equals the dense controlled-NOT simulation, and
// iterating it reproduces the two-copy closed form.
Outcome criterion8() {
  const BlockKeyState raw = raw_key_state(1.0 / 3.0, 2, 1);
  auto [block_out, bs] = recurrence_step_block(raw, raw);
  const DenseState single = block_to_dense(raw);
  auto [dense_out, ds] = recurrence_step_dense(single, single);
  const double dev_dense = std::max(max_abs_diff(block_to_dense(block_out).mat,
                                                 dense_out.mat),
                                    std::abs(bs - ds));
  const double dev_closed =
      block_diff(block_out, n_copy_closed_form({1.0 / 3.0, 2, 1, 2}));
  return {dev_dense <= 1e-10 && dev_closed <= 1e-10,
          fmt("block vs dense deviation = %.3g; iterated vs closed form = %.3g "
              "(tolerance 1e-10)",
              dev_dense, dev_closed)};
}

// 9. Single-copy rate ordering: the measured key rate never exceeds the
// pinching bound, and a strictly private bit saturates both at 1.
Outcome criterion9() {
  std::vector<DenseState> family;
  family.push_back(block_to_dense(raw_key_state(1.0 / 3.0, 2, 1)));
  family.push_back(block_to_dense(raw_key_state(0.3, 2, 1)));
  family.push_back(block_to_dense(n_copy_closed_form({1.0 / 3.0, 2, 1, 2})));
  for (long d = 2; d <= 4; ++d) family.push_back(example1_state(d));
  family.push_back(example2_state(2, 1));
  family.push_back(example2_state(2, 2));

  double worst_gap = -1.0; // max of dw - ree; must stay <= 1e-9
  for (const DenseState &s : family)
    worst_gap = std::max(worst_gap, measured_rate(s) - ree_dephasing_bound(s));

  Rng rng(5);
  const ComplexMatrix v = rng.haar_unitary(2);
  const ComplexMatrix w = rng.haar_unitary(2);
  const Twist t(2, {{{0, 0}, v}, {{1, 1}, w}});
  const DenseState gamma = private_state(
      1, t, DenseState(rng.random_density(2), FactorLayout{{2}, {Party::Ap}}));
  const double dw1 = dw_rate(ccq_state(gamma));
  const double ree1 = ree_dephasing_bound(gamma);

  const bool pass = worst_gap <= 1e-9 && std::abs(dw1 - 1.0) <= 1e-9 &&
                    ree1 >= 1.0 - 1e-9;
  return {pass, fmt("max (rate - bound) = %.3g over %zu states (<= 1e-9); strict "
                    "bit: rate = %.9f, bound = %.9f",
                    worst_gap, family.size(), dw1, ree1)};
}

// 10. Reproduction runs are byte-identical for equal seeds.
Outcome criterion10() {
  const std::string cli = test_support::cli_path();
  if (cli.empty()) return {false, "tool path not configured at build time"};
  size_t checked = 0;
  for (const std::string &name : reproduce_target_names()) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      const std::string dir = test_support::make_temp_dir();
      const auto res = test_support::run_command(
          "cd " + dir + " && " + cli + " reproduce --target " + name + " --seed 3");
      if (res.exit_code != 0)
        return {false, fmt("reproduce %s exited with code %d", name.c_str(),
                           res.exit_code)};
      const std::string table =
          test_support::read_file(dir + "/reproduce_" + name + ".csv");
      if (run == 0)
        first = table;
      else if (table != first)
        return {false, fmt("reproduce %s differs between equal-seed runs",
                           name.c_str())};
    }
    ++checked;
  }
  return {true, fmt("%zu reproduction targets byte-identical across paired runs",
                    checked)};
}

} // namespace

int main(int argc, char **argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[++i]);

  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};

  int failures = 0;
  for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) {
    if (only != 0 && n != only) continue;
    Outcome out;
    try {
      out = criteria[static_cast<size_t>(n - 1)]();
    } catch (const std::exception &e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s — %s\n", n, out.pass ? "PASS" : "FAIL",
                out.detail.c_str());
    if (!out.pass) ++failures;
  }
  return failures;
}
