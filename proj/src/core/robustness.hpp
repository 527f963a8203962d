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
//
// Worst-case analysis of antenna position errors under MRT toward the target:
// first-order sensitivities of every per-user phase, a box-constrained
// quadratic maximization (SDR + randomization + exact vertex enumeration) for
// nulling leakage, and a closed-form worst case for multi-beam gain loss.
//
// Gains on the nulling path follow the un-normalized convention (the 1/N
// factor is dropped); callers re-apply 1/N when comparing against beam gains.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "geometry.hpp"

namespace manf {

struct SensitivityModel {
    int n_antennas = 0;
    int n_users = 0; // K, excluding the target
    double wavelength = 0.0;
    std::vector<double> positions;

    Eigen::MatrixXd beta; // (K+1) x N, row 0 = target; d r_k / d x at x_n
    Eigen::MatrixXd phi0; // K x N nominal phase differences (steering reference)
    Eigen::MatrixXcd s;   // K x N unit-modulus exp(j phi0)
    Eigen::MatrixXcd c;   // K x N first-order leakage coefficients
    Eigen::MatrixXd eta;  // K x N real multi-beam sensitivities
    Eigen::VectorXd D;    // N aggregate sensitivities, D_n = sum_k eta_{k,n}

    /// sum_k c_k c_k^H (Hermitian PSD).
    Eigen::MatrixXcd Q() const;
    /// MRT beam gain |S_k^(0)|^2 / N per user, for premise checks.
    Eigen::VectorXd mrt_gains() const;
};

SensitivityModel build_sensitivity(const Apv &apv, const PolarTarget &target0,
                                   std::span<const PolarTarget> users, double wavelength);

struct ErrorBudget {
    double epsilon = 0.0;
    std::optional<std::vector<double>> delta_d;

    void validate(int n_antennas) const;
};

/// First-order leakage sum_k |sum_n c_{k,n} dd_n|^2. Requires the model to be
/// built on an APV with MRT nulls (|S_k^(0)| <= 1e-6), else NotNulled.
double nulling_leakage_gain(const SensitivityModel &model, std::span<const double> delta_d);

struct WorstCaseNulling {
    std::vector<double> delta_d;
    double leakage = 0.0;
    double sdr_upper_bound = 0.0; // dual objective, certified >= true optimum
};

/// SDR relaxation of the box-constrained quadratic maximization, Gaussian
/// randomization snapped to vertices, and (for N <= 16) an exact vertex pass.
WorstCaseNulling worstcase_nulling(const SensitivityModel &model, double epsilon,
                                   int randomization_draws, uint64_t seed = 0x6d616e66);

struct VertexResult {
    std::vector<double> delta_d;
    double leakage = 0.0;
};

/// Exact maximizer over the box: a convex quadratic attains its maximum at a
/// vertex, so enumerate {+-eps}^N (N <= 20).
VertexResult vertex_oracle(const SensitivityModel &model, double epsilon);

struct WorstCaseMultibeam {
    std::vector<double> delta_d;
    double approx_sum_gain = 0.0;
    std::vector<double> per_user_gains;
};

/// Closed-form worst case when the APV gives full MRT gain at all K users:
/// dd_n = -eps sign(D_n), sum gain K N - eps sum|D_n|.
WorstCaseMultibeam worstcase_multibeam(const SensitivityModel &model, double epsilon);

/// Beam gain with the given weights at positions x + dd (no linearization).
double perturbed_gain(const Apv &apv, std::span<const double> delta_d, const BeamWeights &w,
                      const PolarTarget &target, double wavelength,
                      DistanceModel model = DistanceModel::approx);

} // namespace manf
