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

#include <doctest.h>

#include <cmath>

#include "core/geometry.hpp"
#include "core/rng.hpp"

using namespace manf;

namespace {

// independent route: straight-line distance to the user's Cartesian point
double cartesian_distance(const PolarTarget &t, double x) {
    const double ux = t.distance_R * std::cos(t.angle_theta);
    const double uy = t.distance_R * std::sin(t.angle_theta);
    return std::hypot(ux - x, uy);
}

} // namespace

TEST_CASE("exact distance matches the Cartesian oracle") {
    CHECK(exact_distance({4.0, kPi / 2}, 3.0) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(exact_distance({7.0, 0.83}, 0.0) == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(exact_distance({5.0, kPi / 2}, 0.27) ==
          doctest::Approx(std::sqrt(25.0 + 0.27 * 0.27)).epsilon(1e-14));

    Philox rng(11, 0);
    for (int i = 0; i < 200; ++i) {
        const PolarTarget t{rng.uniform(0.5, 20.0), rng.uniform(0.0, kPi)};
        const double x = rng.uniform(-2.0, 2.0);
        CHECK(exact_distance(t, x) == doctest::Approx(cartesian_distance(t, x)).epsilon(1e-12));
    }
}

TEST_CASE("quadratic approximation of the distance") {
    CHECK(approx_distance({5.0, 0.0}, 0.3) == doctest::Approx(4.7).epsilon(1e-14));
    CHECK(approx_distance({5.0, kPi / 2}, 0.3) == doctest::Approx(5.009).epsilon(1e-14));

    // broadside case from above: error of the quadratic model
    const double diff = std::abs(approx_distance({5.0, kPi / 2}, 0.27) -
                                 exact_distance({5.0, kPi / 2}, 0.27));
    CHECK(diff < 6e-6);
    CHECK(diff > 4e-6);
}

TEST_CASE("approximation error obeys the Taylor remainder bound") {
    // |approx - exact| <= x^4/(8R^3) + |x|^3/(2R^2) over a grid with |x| <= R/5
    for (double R : {1.0, 3.0, 5.0, 9.7}) {
        for (int it = 0; it <= 40; ++it) {
            const double theta = kPi * it / 40.0;
            for (int ix = -10; ix <= 10; ++ix) {
                const double x = 0.2 * R * ix / 10.0;
                const PolarTarget t{R, theta};
                const double err = std::abs(approx_distance(t, x) - exact_distance(t, x));
                const double bound = std::pow(x, 4) / (8 * R * R * R) +
                                     std::pow(std::abs(x), 3) / (2 * R * R);
                CHECK(err <= bound + 1e-14);
            }
        }
    }
}

TEST_CASE("steering vector basics") {
    SUBCASE("zero offsets give an all-ones vector") {
        // strictly increasing positions are required by Apv; use the raw span
        std::vector<double> raw{0.0, 0.0, 0.0, 0.0, 0.0};
        const auto a = steering_vector(std::span<const double>(raw), {5.0, 1.1}, 0.06);
        for (int i = 0; i < 5; ++i) {
            CHECK(a[i].real() == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(a[i].imag() == doctest::Approx(0.0).epsilon(1e-15));
        }
    }

    SUBCASE("squared norm is N for any input") {
        Philox rng(17, 0);
        for (int it = 0; it < 50; ++it) {
            const int n = 1 + static_cast<int>(rng.next_u32() % 12);
            std::vector<double> x(n);
            double acc = 0.0;
            for (auto &v : x)
                v = (acc += rng.uniform(0.03, 0.2));
            const PolarTarget t{rng.uniform(0.5, 12.0), rng.uniform(0.0, kPi)};
            for (auto model : {DistanceModel::approx, DistanceModel::exact,
                               DistanceModel::far_field}) {
                const auto a = steering_vector(std::span<const double>(x), t, 0.06, model);
                CHECK(a.squaredNorm() == doctest::Approx(n).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("far-field consistency at large range") {
    // the quadratic term (2pi/lambda) x^2 sin^2(theta) / (2R) is the whole gap;
    // at R = 1e6 m and x <= 0.54 m it reaches ~1.5e-5 rad, at R = 1e8 m it is
    // below 1e-6 rad
    const double lambda = 0.06;
    std::vector<double> x{0.0, 0.1, 0.27, 0.54};
    for (double R : {1e6, 1e8}) {
        for (int it = 0; it <= 8; ++it) {
            const double theta = kPi * it / 8.0;
            const PolarTarget t{R, theta};
            const auto nf = steering_vector(std::span<const double>(x), t, lambda,
                                            DistanceModel::approx);
            const auto ff = steering_vector(std::span<const double>(x), t, lambda,
                                            DistanceModel::far_field);
            for (size_t i = 0; i < x.size(); ++i) {
                const double dphi = std::abs(std::arg(nf[i] * std::conj(ff[i])));
                const double st = std::sin(theta);
                const double bound = kTwoPi / lambda * x[i] * x[i] * st * st / (2.0 * R);
                CHECK(dphi <= bound + 1e-12);
                CHECK(dphi <= (R >= 1e8 ? 1e-6 : 2e-5));
            }
        }
    }
}

TEST_CASE("beam gain") {
    std::vector<double> x{0.0, 0.05, 0.13, 0.31};
    const Apv apv(x);
    const PolarTarget t{4.72, 1.01};
    const double lambda = 0.06;
    const auto a = steering_vector(apv, t, lambda);

    SUBCASE("MRT attains N") {
        const Eigen::VectorXcd w = a / std::sqrt(4.0);
        CHECK(beam_gain(apv.positions, w, t, lambda) == doctest::Approx(4.0).epsilon(1e-14));
    }
    SUBCASE("orthogonal weights give zero") {
        Eigen::VectorXcd w = Eigen::VectorXcd::Zero(4);
        w[0] = std::conj(a[1]) / std::sqrt(2.0);
        w[1] = -std::conj(a[0]) / std::sqrt(2.0);
        CHECK(beam_gain(apv.positions, w, t, lambda) == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("bounded by N and invariant under common phase rotation") {
        Philox rng(23, 0);
        for (int it = 0; it < 100; ++it) {
            Eigen::VectorXcd w(4);
            for (int i = 0; i < 4; ++i)
                w[i] = std::complex<double>(rng.normal(), rng.normal());
            w /= w.norm();
            const double g = beam_gain(apv.positions, w, t, lambda);
            CHECK(g >= 0.0);
            CHECK(g <= 4.0 + 1e-12);
            const Eigen::VectorXcd w_rot = w * std::polar(1.0, rng.uniform(0.0, kTwoPi));
            CHECK(beam_gain(apv.positions, w_rot, t, lambda) ==
                  doctest::Approx(g).epsilon(1e-12));
        }
    }
}

TEST_CASE("domain type invariants are enforced") {
    CHECK_THROWS_AS((PolarTarget{-1.0, 1.0}.validate()), Error);
    CHECK_THROWS_AS((PolarTarget{1.0, 4.0}.validate()), Error);
    CHECK_THROWS_AS((Apv({0.0, 0.0})), Error);
    CHECK_THROWS_AS((Apv({0.2, 0.1})), Error);
    CHECK_THROWS_AS((Apv(std::vector<double>{})), Error);
    Eigen::VectorXcd w = Eigen::VectorXcd::Ones(3);
    CHECK_THROWS_AS((BeamWeights(w)), Error); // norm sqrt(3) > 1
    CHECK_NOTHROW((BeamWeights(w / w.norm())));
    CHECK_THROWS_AS((ArrayLimits{0.01, 0.03, 0.06}.validate()), Error);
}
