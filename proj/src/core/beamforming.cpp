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

#include "beamforming.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace manf {

namespace {

constexpr double kCondGuard = 1e12;

// Thin SVD of the nulled-steering matrix A (N x K). Returns false when A is
// rank deficient under the guard, and identifies the closest target pair.
bool steering_basis(std::span<const double> positions, std::span<const PolarTarget> nulled,
                    double wavelength, DistanceModel model, Eigen::MatrixXcd *basis,
                    int *bad_i, int *bad_j) {
    const int n = static_cast<int>(positions.size());
    const int k = static_cast<int>(nulled.size());
    Eigen::MatrixXcd A(n, k);
    for (int c = 0; c < k; ++c)
        A.col(c) = steering_vector(positions, nulled[c], wavelength, model);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU);
    const auto &s = svd.singularValues();
    const double smax = s(0);
    const double smin = s(k - 1);
    const double floor_sv = 1e-8 * std::sqrt(static_cast<double>(n));
    if (smin <= floor_sv || smax / smin > kCondGuard) {
        if (bad_i && bad_j) {
            // report the most correlated pair of nulled targets
            double best = -1.0;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) {
                    const double corr = std::abs(A.col(i).dot(A.col(j)));
                    if (corr > best) {
                        best = corr;
                        *bad_i = i;
                        *bad_j = j;
                    }
                }
        }
        return false;
    }
    *basis = svd.matrixU();
    return true;
}

} // namespace

BeamWeights mrt_weights(const Apv &apv, const PolarTarget &target, double wavelength,
                        DistanceModel model) {
    Eigen::VectorXcd a = steering_vector(apv, target, wavelength, model);
    a /= std::sqrt(static_cast<double>(a.size()));
    return BeamWeights(std::move(a));
}

ZfResult zf_weights(const Apv &apv, const PolarTarget &target0,
                    std::span<const PolarTarget> nulled, double wavelength, DistanceModel model) {
    apv.validate();
    const int n = apv.size();
    const int k = static_cast<int>(nulled.size());
    if (k >= n)
        throw Error(Errc::invalid_argument, "zero-forcing needs K < N");

    const Eigen::VectorXcd a0 = steering_vector(apv, target0, wavelength, model);
    if (k == 0) {
        ZfResult r;
        r.weights = BeamWeights(a0 / a0.norm());
        r.residual_I = 0.0;
        r.target_gain = static_cast<double>(n);
        return r;
    }

    Eigen::MatrixXcd U;
    int bad_i = 0, bad_j = 1;
    if (!steering_basis(apv.positions, nulled, wavelength, model, &U, &bad_i, &bad_j)) {
        std::ostringstream msg;
        msg << "nulled targets " << bad_i << " and " << bad_j
            << " produce (near-)identical steering vectors at this APV";
        throw Error(Errc::rank_deficient, msg.str());
    }

    // P(x) a0 = a0 - U U^H a0;  I(x) = ||U^H a0||^2;  |a0^H w|^2 = N - I(x)
    const Eigen::VectorXcd coef = U.adjoint() * a0;
    Eigen::VectorXcd w = a0 - U * coef;
    const double proj_norm = w.norm();
    if (proj_norm <= 1e-12 * std::sqrt(static_cast<double>(n)))
        throw Error(Errc::rank_deficient,
                    "target steering vector lies in the span of the nulled set");
    w /= proj_norm;

    ZfResult r;
    r.residual_I = coef.squaredNorm();
    r.target_gain = static_cast<double>(n) - r.residual_I;
    r.weights = BeamWeights(std::move(w));
    return r;
}

double zf_target_gain_or_veto(std::span<const double> positions, const PolarTarget &target0,
                              std::span<const PolarTarget> nulled, double wavelength,
                              DistanceModel model) {
    const int n = static_cast<int>(positions.size());
    const Eigen::VectorXcd a0 = steering_vector(positions, target0, wavelength, model);
    if (nulled.empty())
        return static_cast<double>(n);
    Eigen::MatrixXcd U;
    if (!steering_basis(positions, nulled, wavelength, model, &U, nullptr, nullptr))
        return -std::numeric_limits<double>::infinity();
    return static_cast<double>(n) - (U.adjoint() * a0).squaredNorm();
}

} // namespace manf
