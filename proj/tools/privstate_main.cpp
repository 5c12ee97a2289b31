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

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "privstate/io.hpp"
#include "privstate/measures.hpp"
#include "privstate/protocol.hpp"
#include "privstate/reproduce.hpp"

namespace {

using namespace privstate;

constexpr const char *kRangeHelp =
    "single value or start:stop[:step]; inclusive of start, exclusive of stop "
    "unless stop-start is an exact step multiple";

// ---------------------------------------------------------------------------
// Small parsing helpers

double parse_real(const std::string &text) {
  errno = 0;
  char *end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (errno != 0 || end == text.c_str() || *end != '\0')
    throw ValidationError("'" + text + "' is not a number");
  return v;
}

long parse_integer(const std::string &text) {
  errno = 0;
  char *end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (errno != 0 || end == text.c_str() || *end != '\0')
    throw ValidationError("'" + text + "' is not an integer");
  return v;
}

std::vector<std::string> split_colon(const std::string &spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<double> parse_real_range(const std::string &spec) {
  const auto parts = split_colon(spec);
  if (parts.size() == 1) return {parse_real(parts[0])};
  if (parts.size() > 3)
    throw ValidationError("range '" + spec + "' has too many ':' separators");
  const double start = parse_real(parts[0]);
  const double stop = parse_real(parts[1]);
  const double step = parts.size() == 3 ? parse_real(parts[2]) : 1.0;
  if (!(step > 0)) throw ValidationError("range step must be positive");
  if (stop < start) throw ValidationError("range stop is below its start");
  const double m = (stop - start) / step;
  const long k_round = std::lround(m);
  const bool exact = std::abs(m - static_cast<double>(k_round)) <=
                     1e-9 * std::max(1.0, std::abs(m));
  long k_end = exact ? k_round : static_cast<long>(std::floor(m));
  while (!exact && k_end > 0 && start + static_cast<double>(k_end) * step >= stop)
    --k_end;
  std::vector<double> values;
  for (long k = 0; k <= k_end; ++k)
    values.push_back(start + static_cast<double>(k) * step);
  return values;
}

std::vector<long> parse_int_range(const std::string &spec) {
  const auto parts = split_colon(spec);
  if (parts.size() == 1) return {parse_integer(parts[0])};
  if (parts.size() > 3)
    throw ValidationError("range '" + spec + "' has too many ':' separators");
  const long start = parse_integer(parts[0]);
  const long stop = parse_integer(parts[1]);
  const long step = parts.size() == 3 ? parse_integer(parts[2]) : 1;
  if (step <= 0) throw ValidationError("range step must be positive");
  if (stop < start) throw ValidationError("range stop is below its start");
  std::vector<long> values;
  for (long v = start; v < stop; v += step) values.push_back(v);
  if ((stop - start) % step == 0) values.push_back(stop);
  return values;
}

std::string human(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string human_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// State-family construction shared by several verbs

struct FamilyState {
  DenseState state;
  double p; // effective mixing weight
};

FamilyState make_family(const std::string &family, std::optional<double> p, long d,
                        long l, long n) {
  if (family == "example1") {
    if (n != 1)
      throw ValidationError("example1 is a single-copy family; --n must be 1");
    return {example1_state(d, p), p ? *p : (1.0 + 1.0 / static_cast<double>(d)) / 2.0};
  }
  if (family == "example2") {
    if (p) throw ValidationError("example2 fixes p = 1/2; drop --p");
    if (n != 1)
      throw ValidationError("example2 is a single-copy family; --n must be 1");
    return {example2_state(d, l), 0.5};
  }
  if (family == "raw") {
    const double eff = p ? *p : 1.0 / 3.0;
    if (n == 1) return {block_to_dense(raw_key_state(eff, d, l)), eff};
    return {block_to_dense(n_copy_closed_form({eff, d, l, n})), eff};
  }
  throw ValidationError("unknown family '" + family +
                        "' (choose example1, example2, raw)");
}

struct StateSource {
  DenseState state;
  std::string family;  // family name or "input"
  std::string p_cell;  // CSV cells; empty when not applicable
  std::string d_cell;
  std::string l_cell;
  std::optional<double> p;
  std::optional<long> d;
  std::optional<long> l;
};

StateSource resolve_source(const std::string &family, const std::string &in_path,
                           std::optional<double> p, long d, long l, long n) {
  if (!in_path.empty() && !family.empty())
    throw ValidationError("choose either --family or --in, not both");
  if (!in_path.empty()) {
    std::ifstream is(in_path, std::ios::binary);
    if (!is) throw ValidationError("cannot read input path " + in_path);
    nlohmann::json j;
    try {
      is >> j;
    } catch (const nlohmann::json::exception &e) {
      throw ValidationError(std::string("input is not valid JSON: ") + e.what());
    }
    return {state_from_json(j), "input", "", "", "", std::nullopt, std::nullopt,
            std::nullopt};
  }
  if (family.empty()) throw ValidationError("one of --family or --in is required");
  FamilyState fs = make_family(family, p, d, l, n);
  return {std::move(fs.state), family,         format_g17(fs.p),
          std::to_string(d),   std::to_string(l), fs.p,
          d,                   l};
}

// ---------------------------------------------------------------------------
// Output plumbing: the file content is assembled fully in memory and written
// only after the computation has succeeded, so a failing run leaves nothing
// at the output path.

struct RunResult {
  std::string out_path;
  std::string content;
  std::string console;
};

void write_file(const std::string &path, const std::string &content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw ValidationError("cannot open output path " + tmp);
    os << content;
    if (!os) {
      std::remove(tmp.c_str());
      throw ValidationError("failed while writing " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw ValidationError("cannot move output into place at " + path);
  }
}

nlohmann::json cell_or_null(const std::optional<double> &v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json cell_or_null(const std::optional<long> &v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string dump_json(const nlohmann::json &j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Verb implementations

RunResult run_build(const std::string &family, std::optional<double> p, long d, long l,
                    long n, bool block_form, const std::string &out) {
  std::string content;
  long dim = 0;
  if (block_form) {
    if (family != "raw")
      throw ValidationError("--block applies to the raw family only");
    const double eff = p ? *p : 1.0 / 3.0;
    const BlockKeyState bs =
        n == 1 ? raw_key_state(eff, d, l) : n_copy_closed_form({eff, d, l, n});
    content = dump_json(block_state_to_json(bs));
    dim = 4 * bs.shield_dim();
  } else {
    FamilyState fs = make_family(family, p, d, l, n);
    content = dump_json(state_to_json(fs.state));
    dim = fs.state.dim();
  }
  char line[160];
  std::snprintf(line, sizeof(line), "wrote %s state of dimension %ld to %s\n",
                family.c_str(), dim, out.c_str());
  return {out, content, line};
}

RunResult run_ppt(const StateSource &src, const std::string &format,
                  const std::string &out) {
  const double mineig = min_pt_eigenvalue(src.state);
  const bool ppt = mineig >= -1e-10;
  const double logneg = log_negativity(src.state);

  std::string content;
  if (format == "json") {
    nlohmann::json row;
    row["family"] = src.family;
    row["p"] = cell_or_null(src.p);
    row["d"] = cell_or_null(src.d);
    row["l"] = cell_or_null(src.l);
    row["min_pt_eigenvalue"] = mineig;
    row["is_ppt"] = ppt;
    row["log_negativity"] = logneg;
    content = dump_json(nlohmann::json::array({row}));
  } else {
    std::ostringstream os;
    os << "family,p,d,l,min_pt_eigenvalue,is_ppt,log_negativity\n";
    os << src.family << "," << src.p_cell << "," << src.d_cell << "," << src.l_cell
       << "," << format_g17(mineig) << "," << (ppt ? "true" : "false") << ","
       << format_g17(logneg) << "\n";
    content = os.str();
  }
  const std::string console = "min PT eigenvalue = " + human_g(mineig) +
                              ", PPT = " + (ppt ? "true" : "false") +
                              ", log-negativity = " + human(logneg) + "\n";
  return {out, content, console};
}

RunResult run_negativity(const StateSource &src, const std::string &format,
                         const std::string &out) {
  const double logneg = log_negativity(src.state);
  std::optional<double> closed;
  if (src.family == "example1") closed = en_example1_closed(*src.d);
  if (src.family == "example2") closed = en_hiding_closed(*src.d, *src.l);

  std::string content;
  if (format == "json") {
    nlohmann::json row;
    row["family"] = src.family;
    row["p"] = cell_or_null(src.p);
    row["d"] = cell_or_null(src.d);
    row["l"] = cell_or_null(src.l);
    row["log_negativity"] = logneg;
    row["closed_form"] = cell_or_null(closed);
    row["abs_deviation"] =
        closed ? nlohmann::json(std::abs(logneg - *closed)) : nlohmann::json(nullptr);
    content = dump_json(nlohmann::json::array({row}));
  } else {
    std::ostringstream os;
    os << "family,p,d,l,log_negativity,closed_form,abs_deviation\n";
    os << src.family << "," << src.p_cell << "," << src.d_cell << "," << src.l_cell
       << "," << format_g17(logneg) << ",";
    if (closed) os << format_g17(*closed);
    os << ",";
    if (closed) os << format_g17(std::abs(logneg - *closed));
    os << "\n";
    content = os.str();
  }
  std::string console = "log-negativity = " + human(logneg);
  if (closed)
    console += ", closed form = " + human(*closed) +
               ", deviation = " + human_g(std::abs(logneg - *closed));
  console += "\n";
  return {out, content, console};
}

RunResult run_security(const StateSource &src, const std::string &format,
                       const std::string &out) {
  const SecurityIdentity id = security_identity(src.state);

  std::string content;
  if (format == "json") {
    nlohmann::json row;
    row["family"] = src.family;
    row["p"] = cell_or_null(src.p);
    row["d"] = cell_or_null(src.d);
    row["l"] = cell_or_null(src.l);
    row["norm_x"] = id.norm_x;
    row["p0"] = id.p0;
    row["p1"] = id.p1;
    row["fidelity"] = id.fid;
    row["residual"] = id.residual;
    content = dump_json(nlohmann::json::array({row}));
  } else {
    std::ostringstream os;
    os << "family,p,d,l,norm_x,p0,p1,fidelity,residual\n";
    os << src.family << "," << src.p_cell << "," << src.d_cell << "," << src.l_cell
       << "," << format_g17(id.norm_x) << "," << format_g17(id.p0) << ","
       << format_g17(id.p1) << "," << format_g17(id.fid) << ","
       << format_g17(id.residual) << "\n";
    content = os.str();
  }
  const std::string console =
      "norm_x = " + human(id.norm_x) + ", sqrt(p0 p1) F = " +
      human(std::sqrt(id.p0 * id.p1) * id.fid) + ", residual = " +
      human_g(id.residual) + "\n";
  return {out, content, console};
}

RunResult run_verify(const StateSource &src, const std::string &format,
                     const std::string &out) {
  const VerifyReport rep = verify_private_state(src.state);
  const double logneg = log_negativity(src.state);

  std::string content;
  if (format == "json") {
    nlohmann::json row;
    row["family"] = src.family;
    row["p"] = cell_or_null(src.p);
    row["d"] = cell_or_null(src.d);
    row["l"] = cell_or_null(src.l);
    row["ok"] = rep.ok;
    row["corner_score"] = rep.corner_score;
    row["fidelity_deficit"] = rep.fidelity_deficit;
    row["log_negativity"] = logneg;
    row["failures"] = rep.failures;
    content = dump_json(nlohmann::json::array({row}));
  } else {
    std::ostringstream os;
    os << "family,p,d,l,ok,corner_score,fidelity_deficit,log_negativity\n";
    os << src.family << "," << src.p_cell << "," << src.d_cell << "," << src.l_cell
       << "," << (rep.ok ? "true" : "false") << "," << format_g17(rep.corner_score)
       << "," << format_g17(rep.fidelity_deficit) << "," << format_g17(logneg)
       << "\n";
    content = os.str();
  }
  std::string console = std::string("private-state: ") + (rep.ok ? "PASS" : "FAIL") +
                        ", E_N = " + human(logneg) + "\n";
  for (const std::string &f : rep.failures) console += "  " + f + "\n";
  return {out, content, console};
}

RunResult run_recurrence(double p, long d, long l, long n, const std::string &check,
                         const std::string &format, const std::string &out) {
  if (n < 2) throw ValidationError("recurrence needs --n >= 2");
  const BlockKeyState raw = raw_key_state(p, d, l);

  // Left-fold iterated pairing against the closed form.
  BlockKeyState acc = raw;
  double first_success = 0.0;
  for (long k = 1; k < n; ++k) {
    auto [next, success] = recurrence_step_block(acc, raw);
    if (k == 1) first_success = success;
    acc = std::move(next);
  }
  const BlockKeyState closed = n_copy_closed_form({p, d, l, n});
  double dev_closed = 0.0;
  dev_closed = std::max(dev_closed, max_abs_diff(acc.d00, closed.d00));
  dev_closed = std::max(dev_closed, max_abs_diff(acc.d01, closed.d01));
  dev_closed = std::max(dev_closed, max_abs_diff(acc.d10, closed.d10));
  dev_closed = std::max(dev_closed, max_abs_diff(acc.d11, closed.d11));
  dev_closed = std::max(dev_closed, max_abs_diff(acc.x, closed.x));

  std::optional<double> dev_dense;
  std::optional<double> dense_success;
  if (check == "dense") {
    const DenseState single = block_to_dense(raw);
    auto [dense_out, success] = recurrence_step_dense(single, single);
    const DenseState block_out =
        block_to_dense(recurrence_step_block(raw, raw).first);
    double dev = max_abs_diff(dense_out.mat, block_out.mat);
    dev = std::max(dev, std::abs(success - first_success));
    dev_dense = dev;
    dense_success = success;
  }

  std::string content;
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    rows.push_back({{"label", "iterated_vs_closed_form"}, {"value", dev_closed}});
    rows.push_back({{"label", "success_prob_step1"}, {"value", first_success}});
    if (dev_dense) {
      rows.push_back({{"label", "block_vs_dense"}, {"value", *dev_dense}});
      rows.push_back({{"label", "success_prob_dense"}, {"value", *dense_success}});
    }
    content = dump_json(rows);
  } else {
    std::ostringstream os;
    os << "label,value\n";
    os << "iterated_vs_closed_form," << format_g17(dev_closed) << "\n";
    os << "success_prob_step1," << format_g17(first_success) << "\n";
    if (dev_dense) {
      os << "block_vs_dense," << format_g17(*dev_dense) << "\n";
      os << "success_prob_dense," << format_g17(*dense_success) << "\n";
    }
    content = os.str();
  }

  std::string console;
  if (dev_closed <= 1e-10)
    console += "iterated pairing vs closed form max deviation <= 1e-10\n";
  else
    console += "iterated pairing vs closed form max deviation = " +
               human_g(dev_closed) + " (> 1e-10)\n";
  if (dev_dense) {
    if (*dev_dense <= 1e-10)
      console += "block vs dense max deviation <= 1e-10\n";
    else
      console += "block vs dense max deviation = " + human_g(*dev_dense) +
                 " (> 1e-10)\n";
  }
  console += "success probability = " + human(first_success) + "\n";
  return {out, content, console};
}

RunResult run_pipeline_verb(double p, long d, long l, long n, const std::string &format,
                            const std::string &out) {
  const SweepRecord rec = run_pipeline({p, d, l, n});
  const std::vector<SweepRecord> rows = {rec};
  std::string content =
      format == "json" ? dump_json(sweep_to_json(rows)) : sweep_to_csv(rows);

  std::string console = std::string("ppt_condition = ") +
                        (rec.ppt_condition ? "true" : "false") +
                        ", norm_x = " + human(rec.norm_x);
  console += ", en_bound = " + (rec.en_bound ? human(*rec.en_bound) : "(skipped)");
  console += ", dw_rate = " + (rec.dw_rate ? human(*rec.dw_rate) : "(skipped)");
  console += "\n";
  if (!rec.note.empty()) console += rec.note + "\n";
  return {out, content, console};
}

RunResult run_sweep(const std::string &p_spec, const std::string &d_spec,
                    const std::string &l_spec, const std::string &n_spec,
                    const std::string &format, const std::string &out) {
  const auto ps = parse_real_range(p_spec);
  const auto ds = parse_int_range(d_spec);
  const auto ls = parse_int_range(l_spec);
  const auto ns = parse_int_range(n_spec);

  std::vector<SweepRecord> records;
  for (double p : ps)
    for (long d : ds)
      for (long l : ls)
        for (long n : ns) records.push_back(run_pipeline({p, d, l, n}));

  std::string content =
      format == "json" ? dump_json(sweep_to_json(records)) : sweep_to_csv(records);
  char line[128];
  std::snprintf(line, sizeof(line), "sweep: %zu rows written to %s\n",
                records.size(), out.c_str());
  return {out, content, line};
}

RunResult run_reproduce(const std::string &target_name, std::uint64_t seed,
                        const std::string &out) {
  const auto target = parse_reproduce_target(target_name);
  if (!target) {
    std::string names;
    for (const auto &n : reproduce_target_names()) names += " " + n;
    throw ValidationError("unknown reproduce target '" + target_name +
                          "'; choose one of:" + names);
  }
  const auto rows = reproduce_rows(*target, seed);
  const std::string content = reproduce_report(*target, seed);

  std::size_t passed = 0;
  double max_dev = 0.0;
  for (const auto &r : rows) {
    if (r.pass) ++passed;
    max_dev = std::max(max_dev, r.deviation);
  }
  char line[160];
  std::snprintf(line, sizeof(line),
                "reproduce %s: %zu/%zu checks passed, max deviation %.3g\n",
                target_name.c_str(), passed, rows.size(), max_dev);
  return {out, content, line};
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{
      "privstate: constructs private and noisy key-correlated quantum states, "
      "applies twisting and the postselected recombination protocol, and checks "
      "the closed-form security and entanglement values against dense linear "
      "algebra"};
  app.require_subcommand(1);

  // Shared option storage.
  std::string family, in_path, out_path, format = "csv", check = "none";
  std::string p_spec = "0.3333333333333333", d_spec = "2", l_spec = "1", n_spec = "1";
  std::optional<double> p_opt;
  double p_scalar = 1.0 / 3.0;
  long d = 2, l = 1, n = 1, n_rec = 2;
  std::uint64_t seed = 0;
  bool block_form = false;
  std::string target_name;

  auto add_format = [&](CLI::App *sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_family_opts = [&](CLI::App *sub) {
    sub->add_option("--family", family, "state family: example1, example2, raw");
    sub->add_option("--in", in_path, "read the state from a JSON file instead");
    sub->add_option("--p", p_opt, "mixing weight (family-specific default)");
    sub->add_option("--d", d, "local shield dimension");
    sub->add_option("--l", l, "shield pairs per copy");
    sub->add_option("--n", n, "copies (raw family only)");
  };

  CLI::App *sub_build = app.add_subcommand("build", "construct a state and write it");
  add_family_opts(sub_build);
  sub_build->add_flag("--block", block_form, "write the raw family in block form");
  auto *build_out = sub_build->add_option("--out", out_path, "output path");

  CLI::App *sub_ppt =
      app.add_subcommand("ppt", "partial-transpose test and log-negativity");
  add_family_opts(sub_ppt);
  add_format(sub_ppt);
  auto *ppt_out = sub_ppt->add_option("--out", out_path, "output path");

  CLI::App *sub_neg =
      app.add_subcommand("negativity", "log-negativity against the closed form");
  add_family_opts(sub_neg);
  add_format(sub_neg);
  auto *neg_out = sub_neg->add_option("--out", out_path, "output path");

  CLI::App *sub_sec = app.add_subcommand(
      "security", "corner norm vs sqrt(p0 p1) x environment fidelity");
  add_family_opts(sub_sec);
  add_format(sub_sec);
  auto *sec_out = sub_sec->add_option("--out", out_path, "output path");

  CLI::App *sub_ver =
      app.add_subcommand("verify", "operational private-state test");
  add_family_opts(sub_ver);
  add_format(sub_ver);
  auto *ver_out = sub_ver->add_option("--out", out_path, "output path");

  CLI::App *sub_rec = app.add_subcommand(
      "recurrence", "postselected recombination vs the closed form");
  sub_rec->add_option("--p", p_scalar, "mixing weight");
  sub_rec->add_option("--d", d, "local shield dimension");
  sub_rec->add_option("--l", l, "shield pairs per copy");
  sub_rec->add_option("--n", n_rec, "number of copies to fold");
  sub_rec->add_option("--check", check, "extra oracle: none or dense")
      ->check(CLI::IsMember({"none", "dense"}));
  add_format(sub_rec);
  auto *rec_out = sub_rec->add_option("--out", out_path, "output path");

  CLI::App *sub_pipe = app.add_subcommand(
      "pipeline", "condition flag, corner norm, log-negativity, key rate");
  sub_pipe->add_option("--p", p_scalar, "mixing weight");
  sub_pipe->add_option("--d", d, "local shield dimension");
  sub_pipe->add_option("--l", l, "shield pairs per copy");
  sub_pipe->add_option("--n", n, "copies");
  add_format(sub_pipe);
  auto *pipe_out = sub_pipe->add_option("--out", out_path, "output path");

  CLI::App *sub_sweep = app.add_subcommand("sweep", "pipeline over a parameter grid");
  sub_sweep->add_option("--p", p_spec, std::string("mixing weight; ") + kRangeHelp);
  sub_sweep->add_option("--d", d_spec, std::string("shield dimension; ") + kRangeHelp);
  sub_sweep->add_option("--l", l_spec, std::string("shield pairs; ") + kRangeHelp);
  sub_sweep->add_option("--n", n_spec, std::string("copies; ") + kRangeHelp);
  add_format(sub_sweep);
  auto *sweep_out = sub_sweep->add_option("--out", out_path, "output path");

  CLI::App *sub_repro = app.add_subcommand(
      "reproduce", "re-derive one quantitative claim and report PASS/FAIL rows");
  sub_repro->add_option("--target", target_name, "claim to re-derive")->required();
  sub_repro->add_option("--seed", seed, "seed for the randomized rows");
  auto *repro_out = sub_repro->add_option("--out", out_path, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (const char *env = std::getenv("PRIVSTATE_DIM_CAP")) {
      errno = 0;
      char *end = nullptr;
      const long cap = std::strtol(env, &end, 10);
      if (errno != 0 || end == env || *end != '\0' || cap < 1)
        throw ValidationError(
            std::string("PRIVSTATE_DIM_CAP must be a positive integer, got '") + env +
            "'");
      set_dense_dim_cap(cap);
    }

    auto default_out = [&](CLI::Option *opt, const std::string &base) {
      if (opt->count() == 0)
        out_path = base + (format == "json" ? ".json" : ".csv");
    };

    RunResult result;
    if (app.got_subcommand(sub_build)) {
      if (build_out->count() == 0) out_path = "state.json";
      if (family.empty()) throw ValidationError("build requires --family");
      result = run_build(family, p_opt, d, l, n, block_form, out_path);
    } else if (app.got_subcommand(sub_ppt)) {
      default_out(ppt_out, "ppt");
      result = run_ppt(resolve_source(family, in_path, p_opt, d, l, n), format,
                       out_path);
    } else if (app.got_subcommand(sub_neg)) {
      default_out(neg_out, "negativity");
      result = run_negativity(resolve_source(family, in_path, p_opt, d, l, n), format,
                              out_path);
    } else if (app.got_subcommand(sub_sec)) {
      default_out(sec_out, "security");
      result = run_security(resolve_source(family, in_path, p_opt, d, l, n), format,
                            out_path);
    } else if (app.got_subcommand(sub_ver)) {
      default_out(ver_out, "verify");
      result = run_verify(resolve_source(family, in_path, p_opt, d, l, n), format,
                          out_path);
    } else if (app.got_subcommand(sub_rec)) {
      default_out(rec_out, "recurrence");
      result = run_recurrence(p_scalar, d, l, n_rec, check, format, out_path);
    } else if (app.got_subcommand(sub_pipe)) {
      default_out(pipe_out, "pipeline");
      result = run_pipeline_verb(p_scalar, d, l, n, format, out_path);
    } else if (app.got_subcommand(sub_sweep)) {
      default_out(sweep_out, "sweep");
      result = run_sweep(p_spec, d_spec, l_spec, n_spec, format, out_path);
    } else if (app.got_subcommand(sub_repro)) {
      if (repro_out->count() == 0) out_path = "reproduce_" + target_name + ".csv";
      result = run_reproduce(target_name, seed, out_path);
    } else {
      throw ValidationError("no subcommand selected");
    }

    write_file(result.out_path, result.content);
    std::fputs(result.console.c_str(), stdout);
    return 0;
  } catch (const DimensionCapError &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ValidationError &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
