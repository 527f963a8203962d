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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "core/beamforming.hpp"
#include "core/construct.hpp"
#include "core/rng.hpp"

using namespace manf;

namespace {

constexpr double kLambda = 0.06;
const ArrayLimits kAlmr{1e9, 0.03, kLambda}; // movement region effectively unbounded

// |a0^H a_k| evaluated through the steering vectors
double null_depth(const Apv &apv, const PolarTarget &t0, const PolarTarget &tk) {
    const auto a0 = steering_vector(apv, t0, kLambda);
    const auto ak = steering_vector(apv, tk, kLambda);
    return std::abs(a0.dot(ak));
}

// phase residue (2pi/lambda)(a x + b x^2) mod 2pi, mapped to [0, 2pi)
double phase_residue(const PhaseCoeffs &c, double x) {
    const double cycles = (c.a * x + c.b * x * x) / kLambda;
    double frac = cycles - std::floor(cycles);
    return kTwoPi * frac;
}

} // namespace

TEST_CASE("phase coefficients") {
    SUBCASE("identical users vanish") {
        const PolarTarget t{5.1, 1.3};
        const auto c = phase_coeffs(t, t);
        CHECK(c.a == 0.0);
        CHECK(c.b == 0.0);
    }
    SUBCASE("broadside pair") {
        const auto c = phase_coeffs({5.0, kPi / 2}, {10.0, kPi / 2});
        CHECK(c.a == doctest::Approx(0.0));
        CHECK(c.b == doctest::Approx(-0.05).epsilon(1e-12));
    }
    SUBCASE("endfire target") {
        const auto c = phase_coeffs({5.0, 0.0}, {7.0, 1.1});
        CHECK(c.a == doctest::Approx(1.0 - std::cos(1.1)).epsilon(1e-14));
        CHECK(c.b ==
              doctest::Approx(std::sin(1.1) * std::sin(1.1) / 14.0).epsilon(1e-12));
    }
}

TEST_CASE("rationalize") {
    auto r = rationalize(0.5, 100);
    CHECK(r.num == 1);
    CHECK(r.den == 2);

    r = rationalize(kPi, 113);
    CHECK(r.num == 355);
    CHECK(r.den == 113);

    r = rationalize(0.0, 7);
    CHECK(r.num == 0);
    CHECK(r.den == 1);

    r = rationalize(-14.0 - 1.0 / 23.0, 50);
    CHECK(r.num == -323);
    CHECK(r.den == 23);

    Philox rng(31, 0);
    for (int it = 0; it < 300; ++it) {
        const double v = rng.uniform(-20.0, 20.0);
        const long long md = 1 + static_cast<long long>(rng.next_u32() % 500);
        const auto pq = rationalize(v, md);
        CHECK(pq.den >= 1);
        CHECK(pq.den <= md);
        CHECK(std::gcd(std::llabs(pq.num), pq.den) == 1);
        const double err = std::abs(v - static_cast<double>(pq.num) / pq.den);
        CHECK(err <= 1.0 / (static_cast<double>(pq.den) * md) + 1e-12);
    }
}

TEST_CASE("single-user nulling construction") {
    const PolarTarget t0{4.72, 1.01};
    const PolarTarget t1{6.32, 1.89};
    const auto coeffs = phase_coeffs(t0, t1);

    SUBCASE("two antennas put the phase terms pi apart") {
        const auto apv = nulling_apv_single(coeffs, 2, kAlmr);
        const double p1 = phase_residue(coeffs, apv.positions[0]);
        const double p2 = phase_residue(coeffs, apv.positions[1]);
        double gap = std::abs(p1 - p2);
        gap = std::min(gap, kTwoPi - gap);
        CHECK(gap == doctest::Approx(kPi).epsilon(1e-8));
    }

    SUBCASE("N=4 null depth and equally spaced residues") {
        const auto apv = nulling_apv_single(coeffs, 4, kAlmr);
        CHECK(null_depth(apv, t0, t1) <= 1e-8 * 4);
        std::vector<double> res;
        for (double x : apv.positions)
            res.push_back(phase_residue(coeffs, x));
        std::sort(res.begin(), res.end());
        for (size_t i = 1; i < res.size(); ++i)
            CHECK(res[i] - res[i - 1] == doctest::Approx(kTwoPi / 4).epsilon(1e-7));
    }

    SUBCASE("spacing and ordering hold across random geometries") {
        Philox rng(41, 0);
        for (int it = 0; it < 40; ++it) {
            const PolarTarget u0{rng.uniform(3.0, 9.0), rng.uniform(0.1, kPi - 0.1)};
            const PolarTarget u1{rng.uniform(3.0, 9.0), rng.uniform(0.1, kPi - 0.1)};
            const auto c = phase_coeffs(u0, u1);
            if (std::abs(c.a) < 1e-12 && std::abs(c.b) < 1e-9 / kLambda)
                continue;
            const int n = 2 + static_cast<int>(rng.next_u32() % 6);
            const auto apv = nulling_apv_single(c, n, kAlmr);
            CHECK(apv.feasible(kAlmr, false));
            CHECK(apv.positions.front() >= -1e-12);
            CHECK(null_depth(apv, u0, u1) <= 1e-8 * n);
        }
    }

    SUBCASE("negative quadratic coefficient") {
        // user closer than the target at the same angle: b < 0
        const auto c = phase_coeffs({8.0, 1.2}, {4.0, 1.2});
        CHECK(c.b > 0.0);
        const auto c_rev = phase_coeffs({4.0, 1.2}, {8.0, 1.2});
        CHECK(c_rev.b < 0.0);
        const auto apv = nulling_apv_single(c_rev, 3, kAlmr);
        CHECK(apv.feasible(kAlmr, false));
        const double depth = null_depth(apv, {4.0, 1.2}, {8.0, 1.2});
        CHECK(depth <= 1e-8 * 3);
    }

    SUBCASE("far-field fallback matches the linear solution") {
        // same distance, mirrored angle: curvature cancels exactly, b = 0
        const PolarTarget u0{6.0, 1.1};
        const PolarTarget u1{6.0, kPi - 1.1};
        const auto c = phase_coeffs(u0, u1);
        CHECK(std::abs(c.b) < 1e-12);
        const int n = 4;
        const auto apv = nulling_apv_single(c, n, kAlmr);
        CHECK(null_depth(apv, u0, u1) <= 1e-8 * n);
        // reproduce the linear positions independently
        double lo = 0.0;
        for (int i = 0; i < n; ++i) {
            const double frac = static_cast<double>(i + 1) / n;
            double q = (c.a > 0) ? std::ceil(c.a * lo / kLambda - frac)
                                 : std::floor(c.a * lo / kLambda - frac);
            double x = kLambda * (frac + q) / c.a;
            if (x < lo) {
                q += (c.a > 0) ? 1 : -1;
                x = kLambda * (frac + q) / c.a;
            }
            CHECK(apv.positions[i] == doctest::Approx(x).epsilon(1e-9));
            lo = x + kAlmr.d_min;
        }
    }

    SUBCASE("degenerate direction is rejected") {
        CHECK_THROWS_AS((void)nulling_apv_single({0.0, 0.0}, 4, kAlmr), Error);
    }
}

TEST_CASE("aligned construction gives full gain") {
    const PolarTarget t0{8.94, 2.03};
    const PolarTarget t1{7.61, 1.16};
    const auto apv = aligned_apv_single(phase_coeffs(t0, t1), 6, kAlmr);
    const auto w = mrt_weights(apv, t0, kLambda);
    CHECK(beam_gain(apv, w, t0, kLambda) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(beam_gain(apv, w, t1, kLambda) == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("index mapping of the factor lemma is a bijection") {
    const int n1 = 3, n2 = 4;
    std::vector<int> seen(n1 * n2 + 1, 0);
    for (int i1 = 1; i1 <= n1; ++i1)
        for (int i2 = 1; i2 <= n2; ++i2)
            seen[i1 + (i2 - 1) * n1] += 1;
    for (int n = 1; n <= n1 * n2; ++n)
        CHECK(seen[n] == 1);
}

TEST_CASE("same-angle extension") {
    const double theta = 1.2;
    const PolarTarget t0{4.0, theta};
    const PolarTarget u1{6.0, theta};
    const PolarTarget u2{9.0, theta};
    const auto c1 = phase_coeffs(t0, u1);
    const auto c2 = phase_coeffs(t0, u2);

    SUBCASE("N2 = 1 returns the base") {
        const auto base = nulling_apv_single(c1, 2, kAlmr);
        const auto same = extend_apv(base, c2, 1, kAlmr);
        CHECK(same.positions == base.positions);
    }

    SUBCASE("2x2 extension nulls both users") {
        const auto base = nulling_apv_single(c1, 2, kAlmr);
        const auto apv = extend_apv(base, c2, 2, kAlmr);
        CHECK(apv.size() == 4);
        CHECK(apv.feasible(kAlmr, false));
        CHECK(null_depth(apv, t0, u1) <= 1e-8 * 4);
        CHECK(null_depth(apv, t0, u2) <= 1e-8 * 4);
    }

    SUBCASE("angle mismatch is rejected") {
        const auto base = nulling_apv_single(c1, 2, kAlmr);
        const auto bad = phase_coeffs(t0, {6.0, theta + 0.3});
        CHECK_THROWS_AS((void)extend_apv(base, bad, 2, kAlmr), Error);
    }

    SUBCASE("zero curvature is degenerate") {
        const auto base = nulling_apv_single(c1, 2, kAlmr);
        CHECK_THROWS_AS((void)extend_apv(base, {0.0, 0.0}, 2, kAlmr), Error);
    }
}

TEST_CASE("factor regrouping") {
    CHECK(regroup_factors(8, 2) == std::vector<int>{2, 4});
    CHECK(regroup_factors(4, 2) == std::vector<int>{2, 2});
    CHECK(regroup_factors(12, 2) == std::vector<int>{2, 6});
    CHECK(regroup_factors(12, 3) == std::vector<int>{2, 2, 3});
    CHECK(regroup_factors(7, 1) == std::vector<int>{7});
    CHECK_THROWS_AS((void)regroup_factors(6, 3), Error);
}

TEST_CASE("full nulling construction") {
    const double theta = 0.9;
    const PolarTarget t0{4.0, theta};

    SUBCASE("N=4 with two same-angle users") {
        std::vector<PolarTarget> users{{6.0, theta}, {9.0, theta}};
        const auto apv = construct_optimal_apv(t0, users, 4, kAlmr);
        const auto w = mrt_weights(apv, t0, kLambda);
        CHECK(beam_gain(apv, w, t0, kLambda) == doctest::Approx(4.0).epsilon(1e-12));
        for (const auto &u : users)
            CHECK(beam_gain(apv, w, u, kLambda) <= 1e-8 * 4);
    }

    SUBCASE("N=8, K=2 uses the regrouped factors {2,4}") {
        std::vector<PolarTarget> users{{6.0, theta}, {9.0, theta}};
        const auto apv = construct_optimal_apv(t0, users, 8, kAlmr);
        CHECK(apv.size() == 8);
        const auto w = mrt_weights(apv, t0, kLambda);
        for (const auto &u : users)
            CHECK(beam_gain(apv, w, u, kLambda) <= 1e-8 * 8);
    }

    SUBCASE("K=1 reduces to the single construction") {
        const PolarTarget u{7.3, 1.7};
        std::vector<PolarTarget> users{u};
        const auto direct = nulling_apv_single(phase_coeffs(t0, u), 6, kAlmr);
        const auto full = construct_optimal_apv(t0, users, 6, kAlmr);
        CHECK(full.positions == direct.positions);
    }

    SUBCASE("K above the factor budget fails") {
        std::vector<PolarTarget> users{{6.0, theta}, {9.0, theta}, {12.0, theta}};
        CHECK_THROWS_AS((void)construct_optimal_apv(t0, users, 4, kAlmr), Error);
    }
}

TEST_CASE("grating-lobe spacing") {
    SUBCASE("no users: smallest feasible spacing") {
        const auto rs = grating_lobe_spacing({}, kAlmr);
        CHECK(rs.d_star == doctest::Approx(kAlmr.d_min));
    }

    SUBCASE("worked example: a_hat 2/3, b_hat 1/2") {
        // a = lambda * 2/3, b = lambda / 4 makes a_hat = 2/3 and b_hat = 1/2
        std::vector<PhaseCoeffs> coeffs{{kLambda * 2.0 / 3.0, kLambda / 4.0}};
        const auto rs = grating_lobe_spacing(coeffs, kAlmr);
        CHECK(rs.d_star == doctest::Approx(6.0).epsilon(1e-12));
        // both products must be integers
        const double a_hat = coeffs[0].a / kLambda;
        const double b_hat = std::sqrt(coeffs[0].b / kLambda);
        CHECK(std::abs(a_hat * rs.d_star - std::round(a_hat * rs.d_star)) < 1e-9);
        CHECK(std::abs(b_hat * rs.d_star - std::round(b_hat * rs.d_star)) < 1e-9);
    }

    SUBCASE("full MRT gain at every user for synthetic rational geometry") {
        // reverse-engineered users with a_hat and b_hat exactly rational
        const PolarTarget t0{5.0, kPi / 2};
        auto make_user = [&](double a_hat, double b_hat) {
            const double a = a_hat * kLambda;
            const double b = b_hat * b_hat * kLambda;
            const double ct = std::cos(t0.angle_theta) - a;
            const double s2 = 1.0 - ct * ct;
            const double denom = b + std::sin(t0.angle_theta) * std::sin(t0.angle_theta) /
                                         (2.0 * t0.distance_R);
            return PolarTarget{s2 / (2.0 * denom), std::acos(ct)};
        };
        std::vector<PolarTarget> users{make_user(-5.0, 0.5), make_user(3.0, 1.0)};
        std::vector<PhaseCoeffs> coeffs;
        for (const auto &u : users)
            coeffs.push_back(phase_coeffs(t0, u));
        const auto rs = grating_lobe_spacing(coeffs, kAlmr);
        const int n = 4;
        const auto apv = uniform_apv(n, rs.d_star);
        const auto w = mrt_weights(apv, t0, kLambda);
        for (const auto &u : users)
            CHECK(beam_gain(apv, w, u, kLambda) == doctest::Approx(n).epsilon(1e-6));

        SUBCASE("permutation invariance") {
            std::vector<PhaseCoeffs> rev(coeffs.rbegin(), coeffs.rend());
            CHECK(grating_lobe_spacing(rev, kAlmr).d_star == rs.d_star);
        }
    }

    SUBCASE("negative curvature is rejected") {
        std::vector<PhaseCoeffs> coeffs{{0.1, -0.01}};
        CHECK_THROWS_AS((void)grating_lobe_spacing(coeffs, kAlmr), Error);
    }

    SUBCASE("irrational input is rejected") {
        std::vector<PhaseCoeffs> coeffs{{kLambda * std::sqrt(2.0), kLambda / 4.0}};
        CHECK_THROWS_AS((void)grating_lobe_spacing(coeffs, kAlmr), Error);
    }
}
