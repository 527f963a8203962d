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

#include "geometry.hpp"

#include <cmath>

namespace manf {

void PolarTarget::validate() const {
    if (!(distance_R > 0.0))
        throw Error(Errc::invalid_argument, "target distance must be positive");
    if (!(angle_theta >= 0.0 && angle_theta <= kPi))
        throw Error(Errc::invalid_argument, "target angle must lie in [0, pi]");
}

void ArrayLimits::validate() const {
    if (!(wavelength > 0.0))
        throw Error(Errc::invalid_argument, "wavelength must be positive");
    if (!(d_min > 0.0) || !(d_min <= d_max))
        throw Error(Errc::invalid_argument, "require 0 < d_min <= d_max");
}

void Apv::validate() const {
    if (positions.empty())
        throw Error(Errc::invalid_argument, "APV must contain at least one antenna");
    for (size_t n = 1; n < positions.size(); ++n)
        if (!(positions[n] > positions[n - 1]))
            throw Error(Errc::invalid_argument, "APV coordinates must be strictly increasing");
}

bool Apv::feasible(const ArrayLimits &limits, bool check_range) const {
    if (positions.empty())
        return false;
    if (check_range && (positions.front() < -1e-12 || positions.back() > limits.d_max + 1e-12))
        return false;
    for (size_t n = 1; n < positions.size(); ++n)
        if (positions[n] - positions[n - 1] < limits.d_min - 1e-12)
            return false;
    return true;
}

void BeamWeights::validate() const {
    if (weights.size() == 0)
        throw Error(Errc::invalid_argument, "weight vector is empty");
    if (weights.norm() > 1.0 + 1e-12)
        throw Error(Errc::invalid_argument, "weight vector norm exceeds 1");
}

double path_offset(const PolarTarget &target, double x, DistanceModel model) {
    const double R = target.distance_R;
    const double ct = std::cos(target.angle_theta);
    switch (model) {
    case DistanceModel::far_field:
        return -x * ct;
    case DistanceModel::approx: {
        const double st = std::sin(target.angle_theta);
        return -x * ct + x * x * st * st / (2.0 * R);
    }
    case DistanceModel::exact: {
        // r - R = R*(sqrt(1+u) - 1) = R*u / (sqrt(1+u) + 1), stable for |u| << 1.
        const double u = (x * x - 2.0 * x * R * ct) / (R * R);
        return R * u / (std::sqrt(1.0 + u) + 1.0);
    }
    }
    throw Error(Errc::internal, "unhandled distance model");
}

double exact_distance(const PolarTarget &target, double x) {
    target.validate();
    return target.distance_R + path_offset(target, x, DistanceModel::exact);
}

double approx_distance(const PolarTarget &target, double x) {
    target.validate();
    return target.distance_R + path_offset(target, x, DistanceModel::approx);
}

Eigen::VectorXcd steering_vector(std::span<const double> positions, const PolarTarget &target,
                                 double wavelength, DistanceModel model) {
    target.validate();
    if (!(wavelength > 0.0))
        throw Error(Errc::invalid_argument, "wavelength must be positive");
    const double k = kTwoPi / wavelength;
    Eigen::VectorXcd a(static_cast<Eigen::Index>(positions.size()));
    for (size_t n = 0; n < positions.size(); ++n) {
        const double phase = k * path_offset(target, positions[n], model);
        a[static_cast<Eigen::Index>(n)] = std::polar(1.0, phase);
    }
    return a;
}

Eigen::VectorXcd steering_vector(const Apv &apv, const PolarTarget &target, double wavelength,
                                 DistanceModel model) {
    apv.validate();
    return steering_vector(std::span<const double>(apv.positions), target, wavelength, model);
}

double beam_gain(std::span<const double> positions, const Eigen::VectorXcd &w,
                 const PolarTarget &target, double wavelength, DistanceModel model) {
    if (w.size() != static_cast<Eigen::Index>(positions.size()))
        throw Error(Errc::invalid_argument, "weight/position size mismatch");
    const Eigen::VectorXcd a = steering_vector(positions, target, wavelength, model);
    return std::norm(w.dot(a)); // w.dot(a) = w^H a
}

double beam_gain(const Apv &apv, const BeamWeights &w, const PolarTarget &target,
                 double wavelength, DistanceModel model) {
    w.validate();
    return beam_gain(std::span<const double>(apv.positions), w.weights, target, wavelength, model);
}

} // namespace manf
