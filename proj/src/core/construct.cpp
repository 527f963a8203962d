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

#include "construct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace manf {

namespace {

// Solve a*x + b*x^2 = lambda * t_n for one x per n, where t_n must land on
// frac[n] + integer. Integers are chosen greedily so that coordinates start at
// or above zero, increase, and keep their pairwise gaps >= d_min.
std::vector<double> quadratic_phase_positions(double a, double b, const ArrayLimits &limits,
                                              std::span<const double> frac) {
    const double lam = limits.wavelength;
    const int n_antennas = static_cast<int>(frac.size());
    std::vector<double> x(n_antennas);

    const bool state_linear = std::abs(b) < 1e-9 / lam; // far-field fallback threshold
    double lo = 0.0;                                    // running lower bound on x

    for (int n = 0; n < n_antennas; ++n) {
        double xn = 0.0;
        if (state_linear) {
            // x = lambda * t / a, t on frac + Z
            const double t_edge = a * lo / lam;
            double q = (a > 0.0) ? std::ceil(t_edge - frac[n]) : std::floor(t_edge - frac[n]);
            xn = lam * (frac[n] + q) / a;
            int guard = 0;
            while (xn < lo - 1e-12 && guard++ < 4) {
                q += (a > 0.0) ? 1.0 : -1.0;
                xn = lam * (frac[n] + q) / a;
            }
        } else {
            // x = c0 + sqrt(c0^2 + (lambda/b) t), the root that can reach x >= lo
            const double c0 = -a / (2.0 * b);
            const double disc0 = c0 * c0;
            const double s_req = std::max(0.0, lo - c0);
            const double t_edge = (s_req * s_req - disc0) * (b / lam);
            double q = (b > 0.0) ? std::ceil(t_edge - frac[n]) : std::floor(t_edge - frac[n]);
            auto eval = [&](double qq) {
                const double t = frac[n] + qq;
                const double arg = std::max(0.0, disc0 + (lam / b) * t);
                return c0 + std::sqrt(arg);
            };
            xn = eval(q);
            int guard = 0;
            while (xn < lo - 1e-12 && guard++ < 4) {
                q += (b > 0.0) ? 1.0 : -1.0;
                xn = eval(q);
            }
        }
        if (!std::isfinite(xn))
            throw Error(Errc::internal, "quadratic phase construction produced a non-finite coordinate");
        x[n] = xn;
        lo = xn + limits.d_min;
    }
    return x;
}

void check_aperture(const std::vector<double> &x, const ArrayLimits &limits, bool strict) {
    if (strict && !x.empty() && x.back() > limits.d_max + 1e-12) {
        std::ostringstream msg;
        msg << "realized aperture " << x.back() << " m exceeds d_max " << limits.d_max << " m";
        throw Error(Errc::infeasible, msg.str());
    }
}

long long gcd_ll(long long a, long long b) { return std::gcd(std::llabs(a), std::llabs(b)); }

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

PhaseCoeffs phase_coeffs(const PolarTarget &target0, const PolarTarget &target_k) {
    target0.validate();
    target_k.validate();
    PhaseCoeffs c;
    c.a = std::cos(target0.angle_theta) - std::cos(target_k.angle_theta);
    const double s0 = std::sin(target0.angle_theta);
    const double sk = std::sin(target_k.angle_theta);
    c.b = sk * sk / (2.0 * target_k.distance_R) - s0 * s0 / (2.0 * target0.distance_R);
    return c;
}

Rational rationalize(double value, long long max_denominator) {
    if (max_denominator < 1)
        throw Error(Errc::invalid_argument, "max_denominator must be >= 1");
    if (value == 0.0)
        return {0, 1};

    const double sign = value < 0.0 ? -1.0 : 1.0;
    double x = std::abs(value);

    // convergent recurrence h_n = a_n h_{n-1} + h_{n-2}
    long long h_prev = 1, k_prev = 0; // h_{-1}/k_{-1}
    long long h = static_cast<long long>(std::floor(x));
    long long k = 1;
    double frac = x - std::floor(x);

    for (int it = 0; it < 64 && frac > 1e-15 * std::max(1.0, x); ++it) {
        x = 1.0 / frac;
        const double af = std::floor(x);
        if (af > 9e17)
            break;
        const long long a = static_cast<long long>(af);
        const long long k_next = a * k + k_prev;
        if (k_next > max_denominator) {
            // A semiconvergent can beat the last convergent in absolute error,
            // but only the convergent is guaranteed to satisfy the contract
            // |v - p/q| <= 1/(q*max_denominator); take the semiconvergent only
            // when it satisfies both.
            const long long a_cut = (max_denominator - k_prev) / k;
            if (a_cut > 0) {
                const long long hs = a_cut * h + h_prev;
                const long long ks = a_cut * k + k_prev;
                const double v = std::abs(value);
                const double err_semi =
                    std::abs(v - static_cast<double>(hs) / static_cast<double>(ks));
                const double err_conv =
                    std::abs(v - static_cast<double>(h) / static_cast<double>(k));
                if (err_semi < err_conv &&
                    err_semi <= 1.0 / (static_cast<double>(ks) * max_denominator)) {
                    h = hs;
                    k = ks;
                }
            }
            break;
        }
        const long long h_next = a * h + h_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        frac = x - af;
    }

    const long long g = std::max(1LL, gcd_ll(h, k));
    return {static_cast<long long>(sign) * h / g, k / g};
}

Apv nulling_apv_single(const PhaseCoeffs &coeffs, int n_antennas, const ArrayLimits &limits,
                       bool strict) {
    limits.validate();
    if (n_antennas < 2)
        throw Error(Errc::invalid_argument, "nulling construction needs N >= 2");
    if (std::abs(coeffs.a) < 1e-12 && std::abs(coeffs.b) < 1e-9 / limits.wavelength)
        throw Error(Errc::degenerate_direction,
                    "a = b = 0: user coincides with the target direction and curvature");

    std::vector<double> frac(n_antennas);
    for (int n = 0; n < n_antennas; ++n)
        frac[n] = static_cast<double>(n + 1) / n_antennas; // n/N for n = 1..N
    auto x = quadratic_phase_positions(coeffs.a, coeffs.b, limits, frac);
    check_aperture(x, limits, strict);
    return Apv(std::move(x));
}

Apv aligned_apv_single(const PhaseCoeffs &coeffs, int n_antennas, const ArrayLimits &limits,
                       bool strict) {
    limits.validate();
    if (n_antennas < 1)
        throw Error(Errc::invalid_argument, "need N >= 1");
    if (std::abs(coeffs.a) < 1e-12 && std::abs(coeffs.b) < 1e-9 / limits.wavelength) {
        // phase profile already identical to the target's: any spacing aligns
        std::vector<double> x(n_antennas);
        for (int n = 0; n < n_antennas; ++n)
            x[n] = n * limits.d_min;
        return Apv(std::move(x));
    }
    std::vector<double> frac(n_antennas, 0.0); // whole cycles only
    auto x = quadratic_phase_positions(coeffs.a, coeffs.b, limits, frac);
    check_aperture(x, limits, strict);
    return Apv(std::move(x));
}

Apv extend_apv(const Apv &base, const PhaseCoeffs &coeff_next, int n2, const ArrayLimits &limits,
               bool strict) {
    base.validate();
    limits.validate();
    if (n2 < 1)
        throw Error(Errc::invalid_argument, "N2 must be >= 1");
    if (n2 == 1)
        return base;
    if (std::abs(coeff_next.a) > 1e-12)
        throw Error(Errc::invalid_argument,
                    "extension requires the identical-angle condition (a_k = 0)");
    if (std::abs(coeff_next.b) < 1e-15)
        throw Error(Errc::degenerate_direction, "b = 0: user shares the target's curvature");

    const double lam = limits.wavelength;
    const int n1 = base.size();

    constexpr int kMaxQ = 100000;
    for (int q = 0; q <= kMaxQ; ++q) {
        // squared-coordinate increment per block
        const double dsq = (1.0 / n2 + q) * lam / std::abs(coeff_next.b);
        std::vector<double> x;
        x.reserve(static_cast<size_t>(n1) * n2);
        for (int j = 0; j < n2; ++j)
            for (int i = 0; i < n1; ++i)
                x.push_back(std::sqrt(base.positions[i] * base.positions[i] + j * dsq));
        std::sort(x.begin(), x.end());
        bool ok = true;
        for (size_t i = 1; i < x.size() && ok; ++i)
            ok = (x[i] - x[i - 1] >= limits.d_min - 1e-12);
        if (ok) {
            check_aperture(x, limits, strict);
            return Apv(std::move(x));
        }
    }
    throw Error(Errc::infeasible, "no integer q yields a d_min-feasible extension");
}

std::vector<int> regroup_factors(int n, int k) {
    if (n < 2)
        throw Error(Errc::invalid_argument, "N must be >= 2");
    if (k < 1)
        throw Error(Errc::invalid_argument, "K must be >= 1");
    std::vector<int> factors;
    int m = n;
    for (int p = 2; p * p <= m; ++p)
        while (m % p == 0) {
            factors.push_back(p);
            m /= p;
        }
    if (m > 1)
        factors.push_back(m);
    const int total = static_cast<int>(factors.size());
    if (k > total) {
        std::ostringstream msg;
        msg << "K = " << k << " exceeds the prime-factor count I(N) = " << total << " of N = " << n;
        throw Error(Errc::infeasible_factorization, msg.str());
    }
    if (k < total) {
        int tail = 1;
        for (int i = k - 1; i < total; ++i)
            tail *= factors[i];
        factors.resize(k);
        factors[k - 1] = tail;
    }
    return factors;
}

Apv construct_optimal_apv(const PolarTarget &target0, std::span<const PolarTarget> users,
                          int n_antennas, const ArrayLimits &limits, bool strict) {
    target0.validate();
    const int k = static_cast<int>(users.size());
    if (k == 0)
        return uniform_apv(n_antennas, limits.d_min);

    std::vector<PhaseCoeffs> coeffs;
    coeffs.reserve(k);
    for (const auto &u : users)
        coeffs.push_back(phase_coeffs(target0, u));
    if (k >= 2)
        for (const auto &c : coeffs)
            if (std::abs(c.a) > 1e-12)
                throw Error(Errc::invalid_argument,
                            "K >= 2 requires all users at the target angle (a_k = 0)");

    const auto groups = regroup_factors(n_antennas, k);
    Apv apv = nulling_apv_single(coeffs[0], groups[0], limits, strict);
    for (int i = 1; i < k; ++i)
        apv = extend_apv(apv, coeffs[i], groups[i], limits, strict);
    return apv;
}

RationalSpacing grating_lobe_spacing(std::span<const PhaseCoeffs> coeffs,
                                     const ArrayLimits &limits, long long max_denominator) {
    limits.validate();
    RationalSpacing out;
    if (coeffs.empty()) {
        out.d_star = limits.d_min;
        return out;
    }

    const double lam = limits.wavelength;
    for (const auto &c : coeffs) {
        if (c.b < -1e-15)
            throw Error(Errc::negative_curvature,
                        "b_k < 0: sqrt(b_k/lambda) is not real, no uniform spacing exists");
        const double a_hat = c.a / lam;
        const double b_hat = std::sqrt(std::max(0.0, c.b) / lam);
        std::array<Rational, 2> t;
        const double vals[2] = {a_hat, b_hat};
        for (int i = 0; i < 2; ++i) {
            t[i] = rationalize(vals[i], max_denominator);
            const double approx = static_cast<double>(t[i].num) / static_cast<double>(t[i].den);
            if (std::abs(vals[i] - approx) > 1e-9 * std::max(1.0, std::abs(vals[i]))) {
                std::ostringstream msg;
                msg << "value " << vals[i] << " has no rational approximation within tolerance at "
                    << "max_denominator " << max_denominator;
                throw Error(Errc::irrational_input, msg.str());
            }
        }
        out.terms.push_back(t);
    }

    __int128 big_q = 1;
    for (const auto &t : out.terms)
        for (int i = 0; i < 2; ++i) {
            big_q *= t[i].den;
            if (big_q > static_cast<__int128>(9.0e36))
                throw Error(Errc::too_large, "denominator product overflows the integer budget");
        }

    __int128 c_max = 0;
    std::vector<std::array<__int128, 2>> m_hat_big;
    for (const auto &t : out.terms) {
        std::array<__int128, 2> row;
        for (int i = 0; i < 2; ++i) {
            row[i] = static_cast<__int128>(t[i].num) * (big_q / t[i].den);
            if (row[i] != 0)
                c_max = gcd128(c_max, row[i]);
        }
        m_hat_big.push_back(row);
    }

    if (c_max == 0) {
        // every coefficient is zero: any spacing works, pick the smallest feasible
        out.d_star = limits.d_min;
        for (size_t u = 0; u < out.terms.size(); ++u)
            out.m_hat.push_back({0, 0});
        return out;
    }

    const double d_base =
        static_cast<double>(big_q) / static_cast<double>(c_max);
    long long zeta = static_cast<long long>(std::ceil(limits.d_min / d_base - 1e-12));
    zeta = std::max(1LL, zeta);

    out.c_max = static_cast<long long>(c_max);
    out.zeta = zeta;
    out.d_star = static_cast<double>(zeta) * d_base;
    for (const auto &row : m_hat_big) {
        for (int i = 0; i < 2; ++i)
            if (row[i] > static_cast<__int128>(9e17) || row[i] < -static_cast<__int128>(9e17))
                throw Error(Errc::too_large, "scaled integer exceeds 64-bit range");
        out.m_hat.push_back({static_cast<long long>(row[0]), static_cast<long long>(row[1])});
    }
    return out;
}

Apv uniform_apv(int n_antennas, double spacing) {
    if (n_antennas < 1)
        throw Error(Errc::invalid_argument, "need N >= 1");
    if (!(spacing > 0.0))
        throw Error(Errc::invalid_argument, "spacing must be positive");
    std::vector<double> x(n_antennas);
    for (int n = 0; n < n_antennas; ++n)
        x[n] = n * spacing;
    return Apv(std::move(x));
}

} // namespace manf
