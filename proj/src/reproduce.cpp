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

#include "privstate/reproduce.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>

#include "privstate/io.hpp"
#include "privstate/measures.hpp"
#include "privstate/protocol.hpp"

namespace privstate {

namespace {

std::string label_printf(const char *fmt, ...) {
  char buf[128];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

ReproduceRow deviation_row(std::string label, double closed, double numeric,
                           double tol) {
  ReproduceRow r;
  r.label = std::move(label);
  r.closed_form = closed;
  r.numeric = numeric;
  r.deviation = std::abs(closed - numeric);
  r.tolerance = tol;
  r.pass = r.deviation <= tol;
  return r;
}

ReproduceRow lower_bound_row(std::string label, double floor_value, double numeric,
                             double tol) {
  ReproduceRow r;
  r.label = std::move(label);
  r.closed_form = floor_value;
  r.numeric = numeric;
  r.deviation = std::max(0.0, floor_value - numeric);
  r.tolerance = tol;
  r.pass = numeric >= floor_value - tol;
  return r;
}

ReproduceRow upper_bound_row(std::string label, double ceiling, double numeric,
                             double tol) {
  ReproduceRow r;
  r.label = std::move(label);
  r.closed_form = ceiling;
  r.numeric = numeric;
  r.deviation = std::max(0.0, numeric - ceiling);
  r.tolerance = tol;
  r.pass = numeric <= ceiling + tol;
  return r;
}

// Random state of the key-correlated block shape: a random density matrix
// pinched onto the allowed sectors, which preserves positivity and trace.
BlockKeyState random_block_state(const FactorLayout &shield, Rng &rng) {
  const long s = shield.total_dim();
  const ComplexMatrix g = rng.random_density(4 * s);
  auto block = [&](int r, int c) { return g.block(r * s, c * s, s, s); };
  return BlockKeyState(block(0, 0), block(1, 1), block(2, 2), block(3, 3),
                       block(0, 3), shield, Validation::full);
}

double dw_after_untwist(const DenseState &s) {
  const Twist tw = untwist_from_x(dense_to_block(s));
  return dw_rate(ccq_state(apply_twist(s, tw)));
}

std::vector<ReproduceRow> rows_eq13() {
  std::vector<ReproduceRow> rows;
  for (double p : {0.25, 0.3, 1.0 / 3.0})
    for (long l : {1L, 2L})
      for (long n : {1L, 2L}) {
        ProtocolParams params{p, 2, l, n};
        rows.push_back(deviation_row(label_printf("p=%.6g d=2 l=%ld n=%ld", p, l, n),
                                     off_diag_norm(params), norm_x_dense(params),
                                     1e-9));
      }
  return rows;
}

std::vector<ReproduceRow> rows_ppt_condition() {
  std::vector<ReproduceRow> rows;
  for (double p : {1.0 / 3.0, 0.3}) {
    const DenseState dense = block_to_dense(raw_key_state(p, 2, 1));
    rows.push_back(lower_bound_row(label_printf("min_pt_eigenvalue p=%.6g", p), 0.0,
                                   min_pt_eigenvalue(dense), 1e-10));
    rows.push_back(deviation_row(label_printf("log_negativity p=%.6g", p), 0.0,
                                 log_negativity(dense), 1e-9));
  }
  return rows;
}

std::vector<ReproduceRow> rows_lemma1(std::uint64_t seed) {
  std::vector<ReproduceRow> rows;
  Rng rng(seed);
  const DenseState ex1 = example1_state(2);
  const DenseState raw = block_to_dense(raw_key_state(1.0 / 3.0, 2, 1));
  for (int k = 0; k < 20; ++k) {
    const Twist t = random_diagonal_twist(2, 4, rng);
    rows.push_back(upper_bound_row(label_printf("example1_d2 twist=%d", k), 0.0,
                                   check_lemma1(ex1, t), 1e-9));
  }
  for (int k = 0; k < 20; ++k) {
    const Twist t = random_diagonal_twist(2, 4, rng);
    rows.push_back(upper_bound_row(label_printf("raw_p1_3 twist=%d", k), 0.0,
                                   check_lemma1(raw, t), 1e-9));
  }
  return rows;
}

std::vector<ReproduceRow> rows_en_example1() {
  std::vector<ReproduceRow> rows;
  for (long d : {2L, 3L, 4L}) {
    const DenseState s = example1_state(d);
    rows.push_back(deviation_row(label_printf("log_negativity d=%ld", d),
                                 en_example1_closed(d), log_negativity(s), 1e-9));
    rows.push_back(deviation_row(label_printf("verify_private_state d=%ld", d), 1.0,
                                 verify_private_state(s).ok ? 1.0 : 0.0, 0.0));
  }
  return rows;
}

std::vector<ReproduceRow> rows_en_example2() {
  std::vector<ReproduceRow> rows;
  for (long l : {1L, 2L}) {
    rows.push_back(deviation_row(label_printf("log_negativity l=%ld", l),
                                 en_hiding_closed(2, l),
                                 log_negativity(example2_state(2, l)), 1e-9));
    const HidingPair hp = hiding_pair(2, l);
    rows.push_back(deviation_row(
        label_printf("tau_diff_norm l=%ld", l),
        2.0 - std::pow(2.0, 1.0 - static_cast<double>(l)),
        trace_norm(hp.tau1.mat - hp.tau0.mat), 1e-9));
  }
  return rows;
}

std::vector<ReproduceRow> rows_security_identity(std::uint64_t seed) {
  std::vector<ReproduceRow> rows;
  auto residual_row = [&](const std::string &label, const DenseState &s) {
    const SecurityIdentity id = security_identity(s);
    rows.push_back(upper_bound_row(label, 0.0, id.residual, 1e-9));
  };
  residual_row("example1_d2", example1_state(2));
  residual_row("example2_d2_l1", example2_state(2, 1));
  for (double p : {1.0 / 3.0, 0.3, 0.45, 0.5})
    residual_row(label_printf("raw p=%.6g", p),
                 block_to_dense(raw_key_state(p, 2, 1)));
  Rng rng(seed);
  const FactorLayout shield{{2, 2}, {Party::Ap, Party::Bp}};
  for (int k = 0; k < 20; ++k)
    residual_row(label_printf("random_block k=%d", k),
                 block_to_dense(random_block_state(shield, rng)));
  return rows;
}

std::vector<ReproduceRow> rows_theorem2_chain() {
  std::vector<ReproduceRow> rows;
  auto chain_row = [&](const std::string &label, const DenseState &s) {
    const double ree = ree_dephasing_bound(s);
    const double dw = dw_after_untwist(s);
    rows.push_back(upper_bound_row("dw_vs_ree " + label, ree, dw, 1e-9));
    return std::make_pair(dw, ree);
  };
  const auto strict = chain_row("example1_d2", example1_state(2));
  rows.push_back(deviation_row("strict_dw_rate example1_d2", 1.0, strict.first, 1e-9));
  rows.push_back(
      lower_bound_row("strict_ree_bound example1_d2", 1.0, strict.second, 1e-9));
  chain_row("example1_d3", example1_state(3));
  chain_row("example1_d4", example1_state(4));
  chain_row("example2_d2_l1", example2_state(2, 1));
  chain_row("example2_d2_l2", example2_state(2, 2));
  chain_row("raw_p1_3", block_to_dense(raw_key_state(1.0 / 3.0, 2, 1)));
  chain_row("raw_p0.3", block_to_dense(raw_key_state(0.3, 2, 1)));
  chain_row("raw_p1_3_n2",
            block_to_dense(n_copy_closed_form({1.0 / 3.0, 2, 1, 2})));
  return rows;
}

} // namespace

const char *reproduce_target_name(ReproduceTarget t) {
  switch (t) {
    case ReproduceTarget::eq13: return "eq13";
    case ReproduceTarget::ppt_condition: return "ppt_condition";
    case ReproduceTarget::lemma1: return "lemma1";
    case ReproduceTarget::en_example1: return "en_example1";
    case ReproduceTarget::en_example2: return "en_example2";
    case ReproduceTarget::security_identity: return "security_identity";
    case ReproduceTarget::theorem2_chain: return "theorem2_chain";
  }
  return "unknown";
}

std::optional<ReproduceTarget> parse_reproduce_target(const std::string &name) {
  for (ReproduceTarget t :
       {ReproduceTarget::eq13, ReproduceTarget::ppt_condition, ReproduceTarget::lemma1,
        ReproduceTarget::en_example1, ReproduceTarget::en_example2,
        ReproduceTarget::security_identity, ReproduceTarget::theorem2_chain})
    if (name == reproduce_target_name(t)) return t;
  return std::nullopt;
}

std::vector<std::string> reproduce_target_names() {
  return {"eq13",        "ppt_condition",     "lemma1",         "en_example1",
          "en_example2", "security_identity", "theorem2_chain"};
}

std::vector<ReproduceRow> reproduce_rows(ReproduceTarget t, std::uint64_t seed) {
  switch (t) {
    case ReproduceTarget::eq13: return rows_eq13();
    case ReproduceTarget::ppt_condition: return rows_ppt_condition();
    case ReproduceTarget::lemma1: return rows_lemma1(seed);
    case ReproduceTarget::en_example1: return rows_en_example1();
    case ReproduceTarget::en_example2: return rows_en_example2();
    case ReproduceTarget::security_identity: return rows_security_identity(seed);
    case ReproduceTarget::theorem2_chain: return rows_theorem2_chain();
  }
  throw ValidationError("unknown reproduce target");
}

std::string reproduce_report(ReproduceTarget t, std::uint64_t seed) {
  std::ostringstream os;
  os << "# reproduce target=" << reproduce_target_name(t) << " seed=" << seed << "\n";
  os << "label,closed_form,numeric,abs_deviation,tolerance,status\n";
  for (const ReproduceRow &r : reproduce_rows(t, seed)) {
    char tol[32];
    std::snprintf(tol, sizeof(tol), "%g", r.tolerance);
    os << r.label << "," << format_g17(r.closed_form) << "," << format_g17(r.numeric)
       << "," << format_g17(r.deviation) << "," << tol << ","
       << (r.pass ? "PASS" : "FAIL") << "\n";
  }
  return os.str();
}

} // namespace privstate
