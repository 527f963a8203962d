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
// Closed-form APV constructions under the arbitrarily-large-movement-region
// assumption: per-user phase polynomials a*x + b*x^2 are steered onto chosen
// points of the unit circle by solving quadratic equations in the antenna
// coordinates, or (for multi-beam) by a single rational spacing that turns
// every phase term into a whole number of cycles.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "geometry.hpp"

namespace manf {

/// Coefficients of the inter-user phase polynomial (2pi/lambda)(a*x + b*x^2).
struct PhaseCoeffs {
    double a = 0.0; // cos(theta_0) - cos(theta_k), dimensionless
    double b = 0.0; // sin^2(theta_k)/(2 R_k) - sin^2(theta_0)/(2 R_0), 1/m
};

PhaseCoeffs phase_coeffs(const PolarTarget &target0, const PolarTarget &target_k);

struct Rational {
    long long num = 0;
    long long den = 1;
};

/// Best rational approximation with denominator <= max_denominator
/// (continued fractions, semiconvergent-aware). gcd(num, den) = 1.
Rational rationalize(double value, long long max_denominator);

/// Everything Theorem-1 style uniform spacing is made of.
struct RationalSpacing {
    std::vector<std::array<Rational, 2>> terms; // per user: {a_hat, b_hat} as fractions
    std::vector<std::array<long long, 2>> m_hat; // scaled integers before gcd reduction
    long long c_max = 1;
    long long zeta = 1;
    double d_star = 0.0; // meters
};

/// Proposition-1 construction: N coordinates whose phase terms are uniformly
/// spread over the unit circle, nulling one user under MRT. Ignores d_max
/// unless strict (realized aperture is positions.back()).
Apv nulling_apv_single(const PhaseCoeffs &coeffs, int n_antennas, const ArrayLimits &limits,
                       bool strict = false);

/// Same quadratic machinery with all phase terms steered to 1 instead:
/// full MRT gain at the extra user. Used by the robustness harness.
Apv aligned_apv_single(const PhaseCoeffs &coeffs, int n_antennas, const ArrayLimits &limits,
                       bool strict = false);

/// Lemma-3 extension: grow a same-angle nulling APV of length N1 into one of
/// length N1*N2 that additionally nulls the user described by coeff_next.
Apv extend_apv(const Apv &base, const PhaseCoeffs &coeff_next, int n2, const ArrayLimits &limits,
               bool strict = false);

/// Algorithm-1 regrouping of the ascending prime factors of n for k nulls.
std::vector<int> regroup_factors(int n, int k);

/// Algorithm 1: MRT toward target0 yields gain N at the target and nulls at
/// every listed user. K >= 2 requires all users to share the target angle.
Apv construct_optimal_apv(const PolarTarget &target0, std::span<const PolarTarget> users,
                          int n_antennas, const ArrayLimits &limits, bool strict = false);

/// Theorem 1: uniform spacing making every per-user phase term a whole number
/// of cycles, so MRT toward target0 achieves full gain at all users.
RationalSpacing grating_lobe_spacing(std::span<const PhaseCoeffs> coeffs,
                                     const ArrayLimits &limits, long long max_denominator = 50);

Apv uniform_apv(int n_antennas, double spacing);

} // namespace manf
