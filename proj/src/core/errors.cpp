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

#include "errors.hpp"

namespace manf {

const char *errc_name(Errc c) {
    switch (c) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::infeasible: return "Infeasible";
    case Errc::rank_deficient: return "RankDeficient";
    case Errc::degenerate_direction: return "DegenerateDirection";
    case Errc::infeasible_factorization: return "InfeasibleFactorization";
    case Errc::negative_curvature: return "NegativeCurvature";
    case Errc::irrational_input: return "IrrationalInput";
    case Errc::empty_feasible_set: return "EmptyFeasibleSet";
    case Errc::solver_failure: return "SolverFailure";
    case Errc::not_nulled: return "NotNulled";
    case Errc::not_full_gain: return "NotFullGain";
    case Errc::too_large: return "TooLarge";
    case Errc::io: return "Io";
    case Errc::internal: return "Internal";
    }
    return "Unknown";
}

} // namespace manf
