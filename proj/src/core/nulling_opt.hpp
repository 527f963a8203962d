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

#include <functional>
#include <span>
#include <vector>

#include "beamforming.hpp"
#include "geometry.hpp"

namespace manf {

struct GridSearchConfig {
    int samples_M = 900; // grid pitch d_max / M
    int rounds_R = 10;

    void validate(int n_antennas) const;
};

/// Sampling points x_i = i * d_max / M for i = 0..M.
std::vector<double> make_grid(double d_max, int samples_M);

/// Candidates for moving antenna `antenna_index` while all others stay put:
/// grid points at distance >= d_min from every other antenna.
/// Throws EmptyFeasibleSet when nothing survives.
std::vector<double> feasible_sampling_set(const std::vector<double> &grid,
                                          const std::vector<double> &positions, int antenna_index,
                                          double d_min);

struct SequentialOutcome {
    std::vector<double> positions;
    std::vector<double> trace; // objective after every single-antenna update
    int rounds_used = 0;
    bool converged = false; // a full round changed nothing
};

/// Round-robin single-antenna updates over the grid; objective evaluated on
/// the raw (unsorted) position vector, -inf vetoes a candidate. Ties break
/// toward the smallest coordinate, so the search is deterministic.
SequentialOutcome
sequential_update(const std::vector<double> &grid, std::vector<double> init, double d_min,
                  const std::function<double(std::span<const double>)> &objective, int rounds);

/// Uniform d_max/(N-1) layout snapped onto the grid, the default start point.
std::vector<double> initial_layout(const std::vector<double> &grid, int n_antennas, double d_min);

struct P2Solution {
    Apv apv;
    ZfResult zf;
    std::vector<double> trace;
    int rounds_used = 0;
    bool converged = false;
};

/// Sequential grid search on the post-ZF target gain N - I(x).
P2Solution solve_p2(const PolarTarget &target0, std::span<const PolarTarget> users,
                    int n_antennas, const ArrayLimits &limits, const GridSearchConfig &grid,
                    DistanceModel model = DistanceModel::approx);

struct MrtNullSolution {
    Apv apv;
    double residual; // sqrt(sum_k |f_k|^2) at the returned APV
};

/// Numerical root-finding for MRT nulls f_k(x) = 0 with general user angles:
/// grid search on -sum|f_k|^2 seeds a Gauss-Newton polish. Used to prepare
/// position-error studies, which assume MRT nulling at the nominal APV.
MrtNullSolution solve_mrt_nulls(const PolarTarget &target0, std::span<const PolarTarget> users,
                                int n_antennas, const ArrayLimits &limits,
                                const GridSearchConfig &grid, int max_starts = 4000,
                                uint64_t seed = 20260809);

} // namespace manf
