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

#include <cstdlib>
#include <json.hpp>

#include "privstate/io.hpp"
#include "privstate/protocol.hpp"
#include "privstate/states.hpp"
#include "privstate/twisting.hpp"
#include "support.hpp"

using namespace privstate;
using test_support::cli_path;
using test_support::count_lines;
using test_support::file_exists;
using test_support::make_temp_dir;
using test_support::read_file;
using test_support::run_command;

TEST_CASE("dense state JSON round trip") {
  const DenseState s = example1_state(2);
  const nlohmann::json j = state_to_json(s);
  const DenseState back = state_from_json(j);
  CHECK(back.layout.dims == s.layout.dims);
  CHECK(back.layout.parties == s.layout.parties);
  CHECK(max_abs_diff(back.mat, s.mat) < 1e-15);

  CHECK_THROWS_AS(state_from_json(nlohmann::json::object()), ValidationError);
  nlohmann::json bad = state_to_json(s);
  bad["real_entries"] = std::vector<double>{1.0};
  CHECK_THROWS_AS(state_from_json(bad), ValidationError);
}

TEST_CASE("block state JSON round trip") {
  const BlockKeyState bs = raw_key_state(1.0 / 3.0, 2, 1);
  const BlockKeyState back = block_state_from_json(block_state_to_json(bs));
  CHECK(back.shield_layout.dims == bs.shield_layout.dims);
  CHECK(max_abs_diff(back.d00, bs.d00) < 1e-15);
  CHECK(max_abs_diff(back.d01, bs.d01) < 1e-15);
  CHECK(max_abs_diff(back.x, bs.x) < 1e-15);
}

TEST_CASE("twist JSON round trip") {
  Rng rng(3);
  const Twist t = random_diagonal_twist(2, 3, rng);
  const Twist back = twist_from_json(twist_to_json(t));
  CHECK(back.key_dim == t.key_dim);
  CHECK(back.shield_dim() == t.shield_dim());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(max_abs_diff(back.block(i, j, 3), t.block(i, j, 3)) < 1e-15);
}

TEST_CASE("sweep serialization") {
  SweepRecord rec = run_pipeline({1.0 / 3.0, 2, 1, 1});
  SweepRecord capped = run_pipeline({0.3, 2, 2, 3}); // dense stages skipped
  const std::string csv = sweep_to_csv({rec, capped});

  const std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header == std::string(kSweepCsvHeader));
  // Shortest-round-trip floats: the corner norm 1/6 keeps all digits.
  CHECK(csv.find("0.16666666666666666") != std::string::npos);
  // Absent dense columns serialize as empty cells at the end of the row.
  CHECK(csv.find(",,\n") != std::string::npos);

  const nlohmann::json rows = sweep_to_json({rec, capped});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["en_bound"].is_number());
  CHECK(rows[1]["en_bound"].is_null());
  CHECK(rows[1]["dw_rate"].is_null());
  CHECK(!rows[1]["note"].get<std::string>().empty());
}

TEST_CASE("shortest-round-trip formatting survives parsing") {
  for (double v : {1.0 / 3.0, 0.1, 1.0 / 6.0, 0.3112781244591329}) {
    const std::string s = format_g17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("command line: state construction") {
  REQUIRE(!cli_path().empty());
  const std::string dir = make_temp_dir();

  auto res = run_command("cd " + dir + " && " + cli_path() +
                         " build --family example1 --d 2");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("state of dimension 16") != std::string::npos);
  REQUIRE(test_support::file_exists(dir + "/state.json"));
  const nlohmann::json j = nlohmann::json::parse(read_file(dir + "/state.json"));
  CHECK(j.at("dims") == nlohmann::json({2, 2, 2, 2}));

  auto blk = run_command("cd " + dir + " && " + cli_path() +
                         " build --family raw --block --out raw_block.json");
  CHECK(blk.exit_code == 0);
  const nlohmann::json jb =
      nlohmann::json::parse(read_file(dir + "/raw_block.json"));
  CHECK(jb.contains("blocks"));

  auto bad = run_command("cd " + dir + " && " + cli_path() +
                         " build --family nope --out missing.json");
  CHECK(bad.exit_code == 2);
  CHECK_FALSE(file_exists(dir + "/missing.json"));
}

TEST_CASE("command line: table verbs and default paths") {
  REQUIRE(!cli_path().empty());
  const std::string dir = make_temp_dir();

  auto ppt = run_command("cd " + dir + " && " + cli_path() + " ppt --family raw");
  CHECK(ppt.exit_code == 0);
  REQUIRE(file_exists(dir + "/ppt.csv"));
  const std::string table = read_file(dir + "/ppt.csv");
  CHECK(table.rfind("family,p,d,l,min_pt_eigenvalue,is_ppt,log_negativity\n", 0) == 0);
  CHECK(count_lines(table) == 2);
  CHECK(table.find("raw,") != std::string::npos);
  CHECK(table.find(",true,") != std::string::npos);

  auto invalid = run_command("cd " + dir + " && " + cli_path() +
                             " ppt --family raw --p 0.7 --out never.csv");
  CHECK(invalid.exit_code == 2);
  CHECK_FALSE(file_exists(dir + "/never.csv"));

  auto neg = run_command("cd " + dir + " && " + cli_path() +
                         " negativity --family example1 --d 3 --format json");
  CHECK(neg.exit_code == 0);
  REQUIRE(file_exists(dir + "/negativity.json"));
  const nlohmann::json rows =
      nlohmann::json::parse(read_file(dir + "/negativity.json"));
  REQUIRE(rows.is_array());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].at("family") == "example1");
  CHECK(std::abs(rows[0].at("abs_deviation").get<double>()) < 1e-9);
}

TEST_CASE("command line: verification verdict line") {
  REQUIRE(!cli_path().empty());
  const std::string dir = make_temp_dir();

  auto good = run_command("cd " + dir + " && " + cli_path() +
                          " verify --family example1 --d 2");
  CHECK(good.exit_code == 0);
  CHECK(good.output.find("private-state: PASS, E_N = 0.585") != std::string::npos);

  auto raw = run_command("cd " + dir + " && " + cli_path() +
                         " verify --family raw --p 0.45 --out raw_verify.csv");
  CHECK(raw.exit_code == 0);
  CHECK(raw.output.find("private-state: FAIL") != std::string::npos);
  CHECK(read_file(dir + "/raw_verify.csv").find(",false,") != std::string::npos);
}

TEST_CASE("command line: recombination report") {
  REQUIRE(!cli_path().empty());
  const std::string dir = make_temp_dir();

  auto res = run_command("cd " + dir + " && " + cli_path() +
                         " recurrence --p 0.3333333333333333 --check dense");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("iterated pairing vs closed form max deviation <= 1e-10") !=
        std::string::npos);
  CHECK(res.output.find("block vs dense max deviation <= 1e-10") != std::string::npos);
  CHECK(res.output.find("success probability = 0.556") != std::string::npos);
  const std::string table = read_file(dir + "/recurrence.csv");
  CHECK(table.find("iterated_vs_closed_form,") != std::string::npos);
  CHECK(table.find("block_vs_dense,") != std::string::npos);
}

TEST_CASE("command line: parameter sweep") {
  REQUIRE(!cli_path().empty());
  const std::string dir = make_temp_dir();

  auto res = run_command("cd " + dir + " && " + cli_path() +
                         " sweep --p 0.2:0.333:0.0333 --d 2 --l 1 --n 1:3");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("sweep: 12 rows written to sweep.csv") != std::string::npos);
  CHECK(count_lines(read_file(dir + "/sweep.csv")) == 13);
}

TEST_CASE("command line: reproduce runs are deterministic") {
  REQUIRE(!cli_path().empty());
  const std::string dir1 = make_temp_dir();
  const std::string dir2 = make_temp_dir();

  for (const std::string &dir : {dir1, dir2}) {
    auto res = run_command("cd " + dir + " && " + cli_path() +
                           " reproduce --target security_identity --seed 7");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("reproduce security_identity:") != std::string::npos);
    REQUIRE(file_exists(dir + "/reproduce_security_identity.csv"));
  }
  CHECK(read_file(dir1 + "/reproduce_security_identity.csv") ==
        read_file(dir2 + "/reproduce_security_identity.csv"));

  auto unknown = run_command("cd " + dir1 + " && " + cli_path() +
                             " reproduce --target unknown_target");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.output.find("eq13") != std::string::npos); // lists valid names
}

TEST_CASE("command line: dimension cap and input files") {
  REQUIRE(!cli_path().empty());
  const std::string dir = make_temp_dir();

  auto capped = run_command("cd " + dir + " && PRIVSTATE_DIM_CAP=8 " + cli_path() +
                            " build --family example1 --d 2");
  CHECK(capped.exit_code == 3);
  CHECK_FALSE(file_exists(dir + "/state.json"));

  auto badcap = run_command("cd " + dir + " && PRIVSTATE_DIM_CAP=abc " + cli_path() +
                            " build --family example1 --d 2");
  CHECK(badcap.exit_code == 2);

  auto seed = run_command("cd " + dir + " && " + cli_path() +
                          " build --family example1 --d 2");
  REQUIRE(seed.exit_code == 0);
  auto from_file = run_command("cd " + dir + " && " + cli_path() +
                               " ppt --in state.json");
  CHECK(from_file.exit_code == 0);
  CHECK(read_file(dir + "/ppt.csv").find("input,") != std::string::npos);

  auto corrupt = run_command("cd " + dir + " && echo 'not json' > bad.json && " +
                             cli_path() + " ppt --in bad.json --out never.csv");
  CHECK(corrupt.exit_code == 2);
  CHECK_FALSE(file_exists(dir + "/never.csv"));
}
