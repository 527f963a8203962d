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

namespace manf {

/// Outcome of a zero-forcing design: unit-norm weights, the leaked projection
/// energy I(x), and the resulting target gain N - I(x).
struct ZfResult {
    BeamWeights weights;
    double residual_I = 0.0;
    double target_gain = 0.0;
};

/// w = a(x, R0, theta0) / sqrt(N); full gain N toward the target.
BeamWeights mrt_weights(const Apv &apv, const PolarTarget &target, double wavelength,
                        DistanceModel model = DistanceModel::approx);

/// Unit-norm projection weights nulling the K given steering vectors.
/// Throws RankDeficient when two nulled targets collapse onto (near-)identical
/// steering vectors at this APV (condition number guard at 1e12).
ZfResult zf_weights(const Apv &apv, const PolarTarget &target0,
                    std::span<const PolarTarget> nulled, double wavelength,
                    DistanceModel model = DistanceModel::approx);

/// Fast path used by the grid search: the post-ZF target gain N - I(x) at raw
/// positions, or -inf when the Gram matrix fails the rank guard.
double zf_target_gain_or_veto(std::span<const double> positions, const PolarTarget &target0,
                              std::span<const PolarTarget> nulled, double wavelength,
                              DistanceModel model = DistanceModel::approx);

} // namespace manf
