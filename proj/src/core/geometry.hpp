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

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "errors.hpp"

namespace manf {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wavefront model used for per-element path lengths.
//   approx:    quadratic (Fresnel) expansion r = R - x cos(th) + x^2 sin^2(th) / (2R)
//   exact:     spherical law-of-cosines distance
//   far_field: planar wavefront, r = R - x cos(th)
enum class DistanceModel { approx, exact, far_field };

/// A user location (distance, angle) in the array's polar frame.
/// The track lies on the polar axis; angle is measured from it, in [0, pi].
struct PolarTarget {
    double distance_R = 1.0; // meters, > 0
    double angle_theta = kPi / 2; // radians

    void validate() const;
};

/// Physical limits of the 1D track: total length, minimum element spacing,
/// and the carrier wavelength they are usually expressed in.
struct ArrayLimits {
    double d_max = 0.54;      // meters
    double d_min = 0.03;      // meters
    double wavelength = 0.06; // meters

    void validate() const;
};

/// Ordered antenna position vector: strictly increasing coordinates on the track.
struct Apv {
    std::vector<double> positions;

    Apv() = default;
    explicit Apv(std::vector<double> p) : positions(std::move(p)) { validate(); }

    int size() const { return static_cast<int>(positions.size()); }
    void validate() const;
    /// True if consecutive spacing >= d_min (and, when check_range, 0 <= x <= d_max).
    bool feasible(const ArrayLimits &limits, bool check_range = true) const;
};

/// Complex transmit weights, Euclidean norm <= 1.
struct BeamWeights {
    Eigen::VectorXcd weights;

    BeamWeights() = default;
    explicit BeamWeights(Eigen::VectorXcd w) : weights(std::move(w)) { validate(); }

    int size() const { return static_cast<int>(weights.size()); }
    void validate() const;
};

/// Element-to-user path length minus the reference distance R (the quantity the
/// steering phase is proportional to). Computed in a cancellation-free form.
double path_offset(const PolarTarget &target, double x, DistanceModel model);

double exact_distance(const PolarTarget &target, double x);
double approx_distance(const PolarTarget &target, double x);

/// Near-field steering vector a(x, R, theta): element n = exp(j*(2pi/lambda)*(r_n - R)).
Eigen::VectorXcd steering_vector(std::span<const double> positions, const PolarTarget &target,
                                 double wavelength, DistanceModel model = DistanceModel::approx);
Eigen::VectorXcd steering_vector(const Apv &apv, const PolarTarget &target, double wavelength,
                                 DistanceModel model = DistanceModel::approx);

/// |w^H a|^2 at the given target; in [0, N] for unit-norm w.
double beam_gain(std::span<const double> positions, const Eigen::VectorXcd &w,
                 const PolarTarget &target, double wavelength,
                 DistanceModel model = DistanceModel::approx);
double beam_gain(const Apv &apv, const BeamWeights &w, const PolarTarget &target,
                 double wavelength, DistanceModel model = DistanceModel::approx);

} // namespace manf
