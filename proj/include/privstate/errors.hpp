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

#ifndef PRIVSTATE_ERRORS_HPP
#define PRIVSTATE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace privstate {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// A precondition or input contract was violated (CLI exit code 2).
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string &msg) : Error(msg) {}
};

// A requested computation exceeds the dense dimension cap (CLI exit code 3).
class DimensionCapError : public Error {
public:
  explicit DimensionCapError(const std::string &msg) : Error(msg) {}
};

// Dense dimension cap shared by all constructors; the CLI may override it
// from the PRIVSTATE_DIM_CAP environment variable.
long dense_dim_cap();
void set_dense_dim_cap(long cap);

// Throws DimensionCapError when dim exceeds the cap; `what` names the
// refused object in the message.
void check_dim_cap(long dim, const std::string &what);

} // namespace privstate

#endif
