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

#ifndef PRIVSTATE_TESTS_SUPPORT_HPP
#define PRIVSTATE_TESTS_SUPPORT_HPP

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/stat.h>
#include <unistd.h>

#include "privstate/rng.hpp"
#include "privstate/state.hpp"

namespace test_support {

// Random full-rank density matrix wrapped in a DenseState on the given layout.
inline privstate::DenseState random_state(const privstate::FactorLayout &layout,
                                          privstate::Rng &rng) {
  return privstate::DenseState(rng.random_density(layout.total_dim()), layout);
}

// Random rank-limited density matrix (kept PSD and unit trace) so that
// purification stays cheap at larger dimensions.
inline privstate::ComplexMatrix low_rank_density(long n, long rank,
                                                 privstate::Rng &rng) {
  privstate::ComplexMatrix g(n, rank);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < rank; ++c) g(r, c) = rng.complex_gaussian();
  privstate::ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

// --- Subprocess harness for CLI tests -------------------------------------

struct CommandResult {
  int exit_code = -1;
  std::string output; // stdout and stderr interleaved
};

inline CommandResult run_command(const std::string &command) {
  CommandResult result;
  FILE *pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe))
    result.output.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline std::string cli_path() {
#ifdef PRIVSTATE_CLI_PATH
  return PRIVSTATE_CLI_PATH;
#else
  const char *env = std::getenv("PRIVSTATE_CLI_PATH");
  return env ? env : "";
#endif
}

// Fresh working directory under the system temp root.
inline std::string make_temp_dir() {
  std::string tmpl = "/tmp/privstate_test_XXXXXX";
  char *dir = mkdtemp(tmpl.data());
  return dir ? dir : "/tmp";
}

inline bool file_exists(const std::string &path) {
  struct stat st;
  return stat(path.c_str(), &st) == 0;
}

inline std::string read_file(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

inline long count_lines(const std::string &text) {
  long n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

} // namespace test_support

#endif
