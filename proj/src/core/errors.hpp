// SPDX-License-Identifier: Apache-2.0
//
// manf - movable-antenna near-field beamforming toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace manf {

// Failure taxonomy shared by the C++ core and the C API.
enum class Errc {
    invalid_argument,
    infeasible,               // geometry/config cannot satisfy the constraints
    rank_deficient,           // (near-)collinear steering vectors in the ZF Gram matrix
    degenerate_direction,     // a_k = b_k = 0: nulling/alignment by positioning impossible
    infeasible_factorization, // K exceeds the usable prime-factor count of N
    negative_curvature,       // b_k < 0 makes sqrt(b_k/lambda) imaginary
    irrational_input,         // rationalization tolerance not met
    empty_feasible_set,       // no grid candidate respects the spacing constraints
    solver_failure,           // inner convex solve missed its tolerance
    not_nulled,               // sensitivity model premise S_k^(0) = 0 violated
    not_full_gain,            // sensitivity model premise G_k = N violated
    too_large,                // problem size beyond an enumeration budget
    io,                       // file read/write failure
    internal,
};

const char *errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string &msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

} // namespace manf
