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

#include <optional>
#include <utility>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "privstate/io.hpp"
#include "privstate/measures.hpp"
#include "privstate/protocol.hpp"
#include "privstate/reproduce.hpp"

namespace py = pybind11;
using namespace privstate;

namespace {

std::vector<std::string> layout_party_names(const FactorLayout &layout) {
  std::vector<std::string> names;
  names.reserve(layout.parties.size());
  for (Party p : layout.parties) names.emplace_back(party_name(p));
  return names;
}

FactorLayout layout_from_python(const std::vector<long> &dims,
                                const std::vector<std::string> &parties) {
  std::vector<Party> parsed;
  parsed.reserve(parties.size());
  for (const auto &name : parties) parsed.push_back(parse_party(name));
  return FactorLayout{dims, parsed};
}

WernerKind werner_kind_from_string(const std::string &kind) {
  if (kind == "sym") return WernerKind::sym;
  if (kind == "asym") return WernerKind::asym;
  throw ValidationError("werner kind must be 'sym' or 'asym'");
}

py::dict record_to_dict(const SweepRecord &rec) {
  py::dict out;
  out["p"] = rec.params.p;
  out["d"] = rec.params.d;
  out["l"] = rec.params.l;
  out["n"] = rec.params.n;
  out["ppt_condition"] = rec.ppt_condition;
  out["norm_x"] = rec.norm_x;
  out["en_bound"] = rec.en_bound ? py::cast(*rec.en_bound) : py::none();
  out["dw_rate"] = rec.dw_rate ? py::cast(*rec.dw_rate) : py::none();
  out["note"] = rec.note;
  return out;
}

const char *method_name(MeasureMethod m) {
  switch (m) {
  case MeasureMethod::closed_form:
    return "closed_form";
  case MeasureMethod::dense:
    return "dense";
  case MeasureMethod::bound:
    return "bound";
  }
  return "dense";
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Private-state construction, twisting, the postselected "
            "recombination protocol, and entanglement measures.";

  // Exception translation: most derived registered last so it matches first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DimensionCapError>(m, "DimensionCapError",
                                            PyExc_RuntimeError);

  py::class_<DenseState>(m, "DenseState",
                         "Density matrix with its tensor-factor layout.")
      .def(py::init([](const ComplexMatrix &mat, const std::vector<long> &dims,
                       const std::vector<std::string> &parties) {
             return DenseState(mat, layout_from_python(dims, parties));
           }),
           py::arg("matrix"), py::arg("dims"), py::arg("parties"))
      .def_property_readonly("matrix",
                             [](const DenseState &s) { return s.mat; })
      .def_property_readonly("dims",
                             [](const DenseState &s) { return s.layout.dims; })
      .def_property_readonly(
          "parties",
          [](const DenseState &s) { return layout_party_names(s.layout); })
      .def("dim", &DenseState::dim)
      .def("__repr__", [](const DenseState &s) {
        std::string r = "DenseState(dim=" + std::to_string(s.dim()) + ", parties=[";
        const auto names = layout_party_names(s.layout);
        for (std::size_t i = 0; i < names.size(); ++i)
          r += (i ? "," : "") + names[i];
        return r + "])";
      });

  py::class_<BlockKeyState>(
      m, "BlockKeyState",
      "Key-correlated state stored as the four key-sector blocks plus the "
      "coherence corner, each an operator on the shield.")
      .def(py::init([](const ComplexMatrix &d00, const ComplexMatrix &d01,
                       const ComplexMatrix &d10, const ComplexMatrix &d11,
                       const ComplexMatrix &x, const std::vector<long> &dims,
                       const std::vector<std::string> &parties) {
             return BlockKeyState(d00, d01, d10, d11, x,
                                  layout_from_python(dims, parties));
           }),
           py::arg("d00"), py::arg("d01"), py::arg("d10"), py::arg("d11"),
           py::arg("x"), py::arg("shield_dims"), py::arg("shield_parties"))
      .def_property_readonly("d00", [](const BlockKeyState &b) { return b.d00; })
      .def_property_readonly("d01", [](const BlockKeyState &b) { return b.d01; })
      .def_property_readonly("d10", [](const BlockKeyState &b) { return b.d10; })
      .def_property_readonly("d11", [](const BlockKeyState &b) { return b.d11; })
      .def_property_readonly("x", [](const BlockKeyState &b) { return b.x; })
      .def_property_readonly(
          "shield_dims",
          [](const BlockKeyState &b) { return b.shield_layout.dims; })
      .def("shield_dim", &BlockKeyState::shield_dim);

  py::class_<Twist>(m, "Twist",
                    "Controlled unitary sum_ij |ij><ij| (x) U_ij on the shield.")
      .def(py::init([](long key_dim,
                       const std::map<std::pair<int, int>, ComplexMatrix> &blocks) {
             return Twist(key_dim, blocks);
           }),
           py::arg("key_dim"), py::arg("blocks"))
      .def_readonly("key_dim", &Twist::key_dim)
      .def("shield_dim", &Twist::shield_dim)
      .def("block", &Twist::block, py::arg("i"), py::arg("j"),
           py::arg("shield_dim"))
      .def("inverse", &Twist::inverse);

  py::class_<CcqOutcome>(m, "CcqOutcome")
      .def_readonly("i", &CcqOutcome::i)
      .def_readonly("j", &CcqOutcome::j)
      .def_readonly("prob", &CcqOutcome::prob)
      .def_readonly("eve", &CcqOutcome::eve);

  py::class_<CcqEnsemble>(m, "CcqEnsemble")
      .def_readonly("outcomes", &CcqEnsemble::outcomes)
      .def("__len__", [](const CcqEnsemble &e) { return e.outcomes.size(); });

  py::class_<SecurityIdentity>(m, "SecurityIdentity")
      .def_readonly("norm_x", &SecurityIdentity::norm_x)
      .def_readonly("p0", &SecurityIdentity::p0)
      .def_readonly("p1", &SecurityIdentity::p1)
      .def_readonly("fid", &SecurityIdentity::fid)
      .def_readonly("residual", &SecurityIdentity::residual);

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("ok", &VerifyReport::ok)
      .def_readonly("failures", &VerifyReport::failures)
      .def_readonly("corner_score", &VerifyReport::corner_score)
      .def_readonly("fidelity_deficit", &VerifyReport::fidelity_deficit);

  // Tensor primitives.
  m.def("kron", &kron, py::arg("a"), py::arg("b"));
  m.def("permute_factors", &permute_factors, py::arg("state"), py::arg("perm"));
  m.def("partial_trace", &partial_trace, py::arg("state"), py::arg("discard"));
  m.def(
      "partial_transpose",
      [](const DenseState &s, const std::vector<std::string> &parties) {
        std::set<Party> set;
        for (const auto &name : parties) set.insert(parse_party(name));
        return partial_transpose(s, set);
      },
      py::arg("state"), py::arg("parties"));
  m.def("trace_norm", &trace_norm, py::arg("matrix"));
  m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
  m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("state"));
  m.def("relative_entropy", &relative_entropy, py::arg("a"), py::arg("b"));
  m.def(
      "polar_decompose",
      [](const ComplexMatrix &x) {
        PolarResult r = polar_decompose(x);
        return py::make_tuple(r.unitary, r.positive);
      },
      py::arg("matrix"), "Returns (unitary, positive) with x = unitary @ positive.");
  m.def("purify", &purify, py::arg("state"));
  m.def("psd_sqrt", &psd_sqrt, py::arg("matrix"));

  // State families.
  m.def("max_entangled", &max_entangled, py::arg("d"));
  m.def(
      "werner_extreme",
      [](long d, const std::string &kind) {
        return werner_extreme(d, werner_kind_from_string(kind));
      },
      py::arg("d"), py::arg("kind"), "kind is 'sym' or 'asym'.");
  m.def(
      "hiding_pair",
      [](long d, long l) {
        HidingPair hp = hiding_pair(d, l);
        return py::make_tuple(std::move(hp.tau0), std::move(hp.tau1));
      },
      py::arg("d"), py::arg("l"), "Returns (tau0, tau1).");
  m.def("private_state", &private_state, py::arg("m"), py::arg("twist"),
        py::arg("shield"));
  m.def("example1_state", &example1_state, py::arg("d"),
        py::arg("p") = std::nullopt);
  m.def("example2_state", &example2_state, py::arg("d"), py::arg("l"));
  m.def("raw_key_state", &raw_key_state, py::arg("p"), py::arg("d"), py::arg("l"));
  m.def("block_to_dense", &block_to_dense, py::arg("block_state"));
  m.def("dense_to_block", &dense_to_block, py::arg("state"));

  // Twisting.
  m.def("apply_twist", &apply_twist, py::arg("state"), py::arg("twist"));
  m.def("ccq_state", &ccq_state, py::arg("state"));
  m.def("ccq_from_pure", &ccq_from_pure, py::arg("pure_state"));
  m.def("security_identity", &security_identity, py::arg("state"));
  m.def("check_lemma1", &check_lemma1, py::arg("state"), py::arg("twist"));
  m.def("untwist_from_x", &untwist_from_x, py::arg("block_state"));
  m.def("verify_private_state", &verify_private_state, py::arg("state"),
        py::arg("tol") = 1e-9);
  m.def(
      "random_diagonal_twist",
      [](long key_dim, long shield_dim, std::uint64_t seed) {
        Rng rng(seed);
        return random_diagonal_twist(key_dim, shield_dim, rng);
      },
      py::arg("key_dim"), py::arg("shield_dim"), py::arg("seed") = 0);
  m.def(
      "random_density",
      [](long n, std::uint64_t seed) {
        Rng rng(seed);
        return rng.random_density(n);
      },
      py::arg("n"), py::arg("seed") = 0);
  m.def(
      "haar_unitary",
      [](long n, std::uint64_t seed) {
        Rng rng(seed);
        return rng.haar_unitary(n);
      },
      py::arg("n"), py::arg("seed") = 0);

  // Protocol.
  m.def("ppt_condition_flag", &ppt_condition_flag, py::arg("p"), py::arg("d"),
        py::arg("l"));
  m.def(
      "recurrence_step_block",
      [](const BlockKeyState &a, const BlockKeyState &b) {
        auto [out, success] = recurrence_step_block(a, b);
        return py::make_tuple(std::move(out), success);
      },
      py::arg("a"), py::arg("b"), "Returns (kept_state, success_probability).");
  m.def(
      "recurrence_step_dense",
      [](const DenseState &a, const DenseState &b) {
        auto [out, success] = recurrence_step_dense(a, b);
        return py::make_tuple(std::move(out), success);
      },
      py::arg("a"), py::arg("b"), "Returns (kept_state, success_probability).");
  m.def(
      "n_copy_closed_form",
      [](double p, long d, long l, long n) {
        return n_copy_closed_form({p, d, l, n});
      },
      py::arg("p"), py::arg("d"), py::arg("l"), py::arg("n"));
  m.def(
      "off_diag_norm",
      [](double p, long d, long l, long n) { return off_diag_norm({p, d, l, n}); },
      py::arg("p"), py::arg("d"), py::arg("l"), py::arg("n"));
  m.def(
      "norm_x_dense",
      [](double p, long d, long l, long n) { return norm_x_dense({p, d, l, n}); },
      py::arg("p"), py::arg("d"), py::arg("l"), py::arg("n"));
  m.def("feasible_params", &feasible_params, py::arg("p"), py::arg("l"),
        "Smallest shield dimension satisfying the closed-form condition, or "
        "None.");
  m.def(
      "run_pipeline",
      [](double p, long d, long l, long n) {
        return record_to_dict(run_pipeline({p, d, l, n}));
      },
      py::arg("p"), py::arg("d"), py::arg("l"), py::arg("n"));

  // Measures.
  m.def("is_ppt", &is_ppt, py::arg("state"));
  m.def("min_pt_eigenvalue", &min_pt_eigenvalue, py::arg("state"));
  m.def("log_negativity", &log_negativity, py::arg("state"));
  m.def("en_example1_closed", &en_example1_closed, py::arg("d"));
  m.def("en_hiding_closed", &en_hiding_closed, py::arg("d"), py::arg("l"));
  m.def("ree_dephasing_bound", &ree_dephasing_bound, py::arg("state"));
  m.def("dw_rate", &dw_rate, py::arg("ensemble"));
  m.def(
      "measure_suite",
      [](const DenseState &s) {
        py::list rows;
        for (const MeasureReport &r : measure_suite(s)) {
          py::dict row;
          row["name"] = r.name;
          row["value"] = r.value;
          row["method"] = method_name(r.method);
          row["tolerance"] = r.tolerance;
          rows.append(row);
        }
        return rows;
      },
      py::arg("state"));

  // Reporting helpers.
  m.def(
      "reproduce_report",
      [](const std::string &target, std::uint64_t seed) {
        const auto t = parse_reproduce_target(target);
        if (!t) throw ValidationError("unknown reproduce target '" + target + "'");
        return reproduce_report(*t, seed);
      },
      py::arg("target"), py::arg("seed") = 0);
  m.def("reproduce_targets", [] { return reproduce_target_names(); });

  // Dense-dimension cap control.
  m.def("dense_dim_cap", &dense_dim_cap);
  m.def("set_dense_dim_cap", &set_dense_dim_cap, py::arg("cap"));
}
