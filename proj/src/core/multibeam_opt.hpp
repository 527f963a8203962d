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

#include <span>
#include <vector>

#include "geometry.hpp"
#include "nulling_opt.hpp"

namespace manf {

struct ScaConfig {
    double tol_delta = 1e-6;
    int max_iters = 50;
    double inner_kkt_tol = 1e-8;

    void validate() const;
};

struct AoConfig {
    double tol = 1e-5;
    int max_iters = 20;
};

/// Linear minorant of the beam gain at `target`, expanded at w_t:
/// 2 Re{w_t^H (a a^H) w} - |a^H w_t|^2. Equals the true gain at w = w_t and
/// never exceeds it elsewhere.
double surrogate_gain(const Eigen::VectorXcd &w, const Eigen::VectorXcd &w_t, const Apv &apv,
                      const PolarTarget &target, double wavelength,
                      DistanceModel model = DistanceModel::approx);

struct ScaSolution {
    BeamWeights weights;
    double delta = 0.0;              // surrogate max-min at the final local point
    std::vector<double> delta_trace; // per SCA iteration, non-decreasing
    int iters = 0;
};

/// Max-min beamforming with the APV fixed: iterated linearization, each step
/// a convex ball-constrained subproblem.
ScaSolution solve_beamforming_subproblem(const Apv &apv, std::span<const PolarTarget> targets,
                                         const BeamWeights &w_init, double wavelength,
                                         const ScaConfig &cfg,
                                         DistanceModel model = DistanceModel::approx);

struct P3Solution {
    Apv apv;
    BeamWeights weights;
    double delta = 0.0;                 // final min beam gain over the K+1 users
    std::vector<double> trace;          // min gain after each AO iteration
    std::vector<double> per_user_gains; // target first
    int ao_iters = 0;
    bool converged = false;
};

/// One position-update move with the weights held fixed: takes the current
/// slot-ordered coordinates, returns improved ones (same slot pairing).
using PositionStep =
    std::function<std::vector<double>(const std::vector<double> &, const Eigen::VectorXcd &)>;

/// Alternating-optimization driver shared by the main solver and the grid /
/// swarm benchmark variants: SCA beamforming step, then the supplied position
/// step, until the max-min gain stalls. The returned APV and weights are
/// sorted jointly so slot pairing survives canonicalization.
P3Solution ao_maxmin(std::vector<double> init_positions, std::span<const PolarTarget> targets,
                     double wavelength, const ScaConfig &sca, const AoConfig &ao,
                     DistanceModel model, const PositionStep &x_step);

/// Alternating optimization: SCA beamforming step, then a sequential-update
/// position step on the min-gain objective, until the max-min gain stalls.
P3Solution solve_p3(const PolarTarget &target0, std::span<const PolarTarget> users,
                    int n_antennas, const ArrayLimits &limits, const GridSearchConfig &grid,
                    const ScaConfig &sca, const AoConfig &ao,
                    DistanceModel model = DistanceModel::approx);

/// Equal-gain combination of the K+1 steering vectors, the default w^0.
BeamWeights equal_gain_start(const Apv &apv, std::span<const PolarTarget> targets,
                             double wavelength, DistanceModel model = DistanceModel::approx);

} // namespace manf
