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

#include "scenario.hpp"

namespace manf {

enum class BaselineKind { FPA, SA, AS, PSO, FF };

/// Deterministic benchmark layouts. FPA: d_min-spaced block centered on the
/// track. SA: equal spacing d_max/N. AS: best N of the d_min-pitch grid under
/// the scenario's sequential-update objective.
Apv baseline_apv(BaselineKind kind, const ScenarioConfig &cfg);

struct PsoOutcome {
    Apv apv;
    double objective = 0.0;
};

/// Constriction-coefficient particle swarm over continuous positions with
/// sort-and-shift feasibility repair. Objective: post-ZF target gain
/// (nulling) or SCA-capped min gain (multibeam).
PsoOutcome pso_solve(const ScenarioConfig &cfg);

struct FarFieldOutcome {
    Apv apv;
    BeamWeights weights;
};

/// Runs the same solver machinery under planar-wavefront steering; callers
/// evaluate the returned solution with the near-field model.
FarFieldOutcome far_field_solve(const ScenarioConfig &cfg);

} // namespace manf
