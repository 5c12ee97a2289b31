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

#ifndef PRIVSTATE_IO_HPP
#define PRIVSTATE_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "privstate/protocol.hpp"
#include "privstate/twisting.hpp"

namespace privstate {

// Shortest round-trip decimal form (17 significant digits).
std::string format_g17(double v);

// Dense states: {dims, parties, real_entries, imag_entries}, row-major.
nlohmann::json state_to_json(const DenseState &s);
DenseState state_from_json(const nlohmann::json &j);

// Block states: shield layout plus the five blocks in the same matrix
// encoding.
nlohmann::json block_state_to_json(const BlockKeyState &bs);
BlockKeyState block_state_from_json(const nlohmann::json &j);

// Twists: a map from "i,j" key-label pairs to matrix encodings.
nlohmann::json twist_to_json(const Twist &t);
Twist twist_from_json(const nlohmann::json &j);

// Sweep serialization: fixed CSV schema and a JSON mirror with the same
// fields (absent values become empty cells / null).
extern const char *kSweepCsvHeader; // p,d,l,n,ppt_condition,norm_x,en_bound,dw_rate
std::string sweep_to_csv(const std::vector<SweepRecord> &rows);
nlohmann::json sweep_to_json(const std::vector<SweepRecord> &rows);

} // namespace privstate

#endif
