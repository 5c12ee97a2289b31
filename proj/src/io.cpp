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

#include "privstate/io.hpp"

#include <cstdio>
#include <sstream>

namespace privstate {

namespace {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix &m) {
  json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  out["real_entries"] = re;
  out["imag_entries"] = im;
  return out;
}

ComplexMatrix matrix_from_json(const json &j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("real_entries") || !j.contains("imag_entries"))
    throw ValidationError("matrix object needs rows, cols, real_entries, imag_entries");
  const long rows = j.at("rows").get<long>();
  const long cols = j.at("cols").get<long>();
  if (rows < 1 || cols < 1) throw ValidationError("matrix dimensions must be positive");
  const auto re = j.at("real_entries").get<std::vector<double>>();
  const auto im = j.at("imag_entries").get<std::vector<double>>();
  if (static_cast<long>(re.size()) != rows * cols ||
      static_cast<long>(im.size()) != rows * cols)
    throw ValidationError("matrix entry arrays must hold rows*cols values");
  ComplexMatrix m(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c)
      m(r, c) = Complex(re[r * cols + c], im[r * cols + c]);
  return m;
}

std::vector<std::string> party_names(const std::vector<Party> &parties) {
  std::vector<std::string> names;
  names.reserve(parties.size());
  for (Party p : parties) names.push_back(party_name(p));
  return names;
}

std::vector<Party> parties_from_names(const std::vector<std::string> &names) {
  std::vector<Party> parties;
  parties.reserve(names.size());
  for (const auto &n : names) parties.push_back(parse_party(n));
  return parties;
}

} // namespace

const char *kSweepCsvHeader = "p,d,l,n,ppt_condition,norm_x,en_bound,dw_rate";

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json state_to_json(const DenseState &s) {
  json out;
  out["dims"] = s.layout.dims;
  out["parties"] = party_names(s.layout.parties);
  std::vector<double> re, im;
  re.reserve(s.mat.size());
  im.reserve(s.mat.size());
  for (long r = 0; r < s.mat.rows(); ++r)
    for (long c = 0; c < s.mat.cols(); ++c) {
      re.push_back(s.mat(r, c).real());
      im.push_back(s.mat(r, c).imag());
    }
  out["real_entries"] = re;
  out["imag_entries"] = im;
  return out;
}

DenseState state_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("parties") ||
      !j.contains("real_entries") || !j.contains("imag_entries"))
    throw ValidationError("state object needs dims, parties, real_entries, imag_entries");
  FactorLayout layout{j.at("dims").get<std::vector<long>>(),
                      parties_from_names(j.at("parties").get<std::vector<std::string>>())};
  const long n = layout.total_dim();
  const auto re = j.at("real_entries").get<std::vector<double>>();
  const auto im = j.at("imag_entries").get<std::vector<double>>();
  if (static_cast<long>(re.size()) != n * n || static_cast<long>(im.size()) != n * n)
    throw ValidationError("state entry arrays must hold dim*dim values");
  ComplexMatrix m(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) m(r, c) = Complex(re[r * n + c], im[r * n + c]);
  return DenseState(std::move(m), std::move(layout), Validation::full);
}

nlohmann::json block_state_to_json(const BlockKeyState &bs) {
  json out;
  out["shield_dims"] = bs.shield_layout.dims;
  out["shield_parties"] = party_names(bs.shield_layout.parties);
  json blocks;
  blocks["d00"] = matrix_to_json(bs.d00);
  blocks["d01"] = matrix_to_json(bs.d01);
  blocks["d10"] = matrix_to_json(bs.d10);
  blocks["d11"] = matrix_to_json(bs.d11);
  blocks["x"] = matrix_to_json(bs.x);
  out["blocks"] = blocks;
  return out;
}

BlockKeyState block_state_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("shield_dims") || !j.contains("shield_parties") ||
      !j.contains("blocks"))
    throw ValidationError("block state object needs shield_dims, shield_parties, blocks");
  FactorLayout shield{
      j.at("shield_dims").get<std::vector<long>>(),
      parties_from_names(j.at("shield_parties").get<std::vector<std::string>>())};
  const json &blocks = j.at("blocks");
  for (const char *name : {"d00", "d01", "d10", "d11", "x"})
    if (!blocks.contains(name))
      throw ValidationError(std::string("block state is missing block ") + name);
  return BlockKeyState(matrix_from_json(blocks.at("d00")),
                       matrix_from_json(blocks.at("d01")),
                       matrix_from_json(blocks.at("d10")),
                       matrix_from_json(blocks.at("d11")),
                       matrix_from_json(blocks.at("x")), std::move(shield),
                       Validation::full);
}

nlohmann::json twist_to_json(const Twist &t) {
  json out;
  out["key_dim"] = t.key_dim;
  json blocks = json::object();
  for (const auto &[idx, u] : t.blocks) {
    std::ostringstream key;
    key << idx.first << "," << idx.second;
    blocks[key.str()] = matrix_to_json(u);
  }
  out["blocks"] = blocks;
  return out;
}

Twist twist_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("key_dim") || !j.contains("blocks"))
    throw ValidationError("twist object needs key_dim and blocks");
  const long key_dim = j.at("key_dim").get<long>();
  std::map<std::pair<int, int>, ComplexMatrix> blocks;
  for (const auto &[name, value] : j.at("blocks").items()) {
    int i = -1, k = -1;
    if (std::sscanf(name.c_str(), "%d,%d", &i, &k) != 2)
      throw ValidationError("twist block keys must look like \"i,j\"");
    blocks.emplace(std::make_pair(i, k), matrix_from_json(value));
  }
  return Twist(key_dim, std::move(blocks));
}

std::string sweep_to_csv(const std::vector<SweepRecord> &records) {
  std::ostringstream out;
  out << kSweepCsvHeader << "\n";
  for (const auto &r : records) {
    out << format_g17(r.params.p) << "," << r.params.d << "," << r.params.l << ","
        << r.params.n << "," << (r.ppt_condition ? "true" : "false") << ","
        << format_g17(r.norm_x) << ",";
    if (r.en_bound) out << format_g17(*r.en_bound);
    out << ",";
    if (r.dw_rate) out << format_g17(*r.dw_rate);
    out << "\n";
  }
  return out.str();
}

nlohmann::json sweep_to_json(const std::vector<SweepRecord> &records) {
  json rows = json::array();
  for (const auto &r : records) {
    json row;
    row["p"] = r.params.p;
    row["d"] = r.params.d;
    row["l"] = r.params.l;
    row["n"] = r.params.n;
    row["ppt_condition"] = r.ppt_condition;
    row["norm_x"] = r.norm_x;
    row["en_bound"] = r.en_bound ? json(*r.en_bound) : json(nullptr);
    row["dw_rate"] = r.dw_rate ? json(*r.dw_rate) : json(nullptr);
    row["note"] = r.note;
    rows.push_back(row);
  }
  return rows;
}

} // namespace privstate
