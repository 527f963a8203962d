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

#include "nulling_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "construct.hpp"
#include "rng.hpp"

namespace manf {

void GridSearchConfig::validate(int n_antennas) const {
    if (samples_M < 10 * n_antennas)
        throw Error(Errc::invalid_argument, "grid needs M >= 10 N sampling intervals");
    if (rounds_R < 1)
        throw Error(Errc::invalid_argument, "rounds must be >= 1");
}

std::vector<double> make_grid(double d_max, int samples_M) {
    if (!(d_max > 0.0) || samples_M < 1)
        throw Error(Errc::invalid_argument, "bad grid parameters");
    std::vector<double> grid(samples_M + 1);
    for (int i = 0; i <= samples_M; ++i)
        grid[i] = d_max * static_cast<double>(i) / samples_M;
    return grid;
}

std::vector<double> feasible_sampling_set(const std::vector<double> &grid,
                                          const std::vector<double> &positions, int antenna_index,
                                          double d_min) {
    if (antenna_index < 0 || antenna_index >= static_cast<int>(positions.size()))
        throw Error(Errc::invalid_argument, "antenna index out of range");
    std::vector<double> out;
    out.reserve(grid.size());
    for (double s : grid) {
        bool ok = true;
        for (int j = 0; j < static_cast<int>(positions.size()) && ok; ++j) {
            if (j == antenna_index)
                continue;
            ok = std::abs(s - positions[j]) >= d_min - 1e-12;
        }
        if (ok)
            out.push_back(s);
    }
    if (out.empty())
        throw Error(Errc::empty_feasible_set,
                    "no sampling point keeps d_min to the other antennas; grid too coarse");
    return out;
}

SequentialOutcome
sequential_update(const std::vector<double> &grid, std::vector<double> init, double d_min,
                  const std::function<double(std::span<const double>)> &objective, int rounds) {
    SequentialOutcome out;
    out.positions = std::move(init);
    const int n = static_cast<int>(out.positions.size());
    out.trace.reserve(static_cast<size_t>(rounds) * n);

    for (int r = 0; r < rounds; ++r) {
        bool changed = false;
        for (int ant = 0; ant < n; ++ant) {
            const auto cands = feasible_sampling_set(grid, out.positions, ant, d_min);
            const double keep = out.positions[ant];
            double best_val = -std::numeric_limits<double>::infinity();
            double best_s = keep;
            for (double s : cands) {
                out.positions[ant] = s;
                const double val = objective(out.positions);
                if (val > best_val) { // strict: first (smallest) coordinate wins ties
                    best_val = val;
                    best_s = s;
                }
            }
            out.positions[ant] = best_s;
            changed = changed || best_s != keep;
            out.trace.push_back(best_val);
        }
        out.rounds_used = r + 1;
        if (!changed) {
            out.converged = true;
            break;
        }
    }
    return out;
}

std::vector<double> initial_layout(const std::vector<double> &grid, int n_antennas, double d_min) {
    const int m = static_cast<int>(grid.size()) - 1;
    const double d_max = grid.back();
    const double pitch = d_max / m;
    const int step_min = static_cast<int>(std::ceil(d_min / pitch - 1e-12));
    if (static_cast<long long>(n_antennas - 1) * step_min > m)
        throw Error(Errc::infeasible, "track cannot hold N antennas at d_min spacing");

    std::vector<int> idx(n_antennas);
    for (int i = 0; i < n_antennas; ++i) {
        const double x = n_antennas == 1 ? 0.0 : d_max * i / (n_antennas - 1);
        idx[i] = static_cast<int>(std::lround(x / pitch));
    }
    for (int i = 1; i < n_antennas; ++i)
        idx[i] = std::max(idx[i], idx[i - 1] + step_min);
    for (int i = n_antennas - 1; i >= 0; --i) {
        idx[i] = std::min(idx[i], m - (n_antennas - 1 - i) * step_min);
        if (i + 1 < n_antennas)
            idx[i] = std::min(idx[i], idx[i + 1] - step_min);
    }
    if (idx.front() < 0)
        throw Error(Errc::infeasible, "track cannot hold N antennas at d_min spacing");

    std::vector<double> out(n_antennas);
    for (int i = 0; i < n_antennas; ++i)
        out[i] = grid[idx[i]];
    return out;
}

P2Solution solve_p2(const PolarTarget &target0, std::span<const PolarTarget> users,
                    int n_antennas, const ArrayLimits &limits, const GridSearchConfig &grid_cfg,
                    DistanceModel model) {
    limits.validate();
    grid_cfg.validate(n_antennas);
    if (static_cast<int>(users.size()) >= n_antennas)
        throw Error(Errc::invalid_argument, "zero-forcing needs K < N");

    const auto grid = make_grid(limits.d_max, grid_cfg.samples_M);
    auto init = initial_layout(grid, n_antennas, limits.d_min);
    const auto objective = [&](std::span<const double> x) {
        return zf_target_gain_or_veto(x, target0, users, limits.wavelength, model);
    };
    auto seq = sequential_update(grid, std::move(init), limits.d_min, objective, grid_cfg.rounds_R);

    std::sort(seq.positions.begin(), seq.positions.end());
    P2Solution sol;
    sol.apv = Apv(std::move(seq.positions));
    sol.zf = zf_weights(sol.apv, target0, users, limits.wavelength, model);
    sol.trace = std::move(seq.trace);
    sol.rounds_used = seq.rounds_used;
    sol.converged = seq.converged;
    return sol;
}

namespace {

// residual vector [Re f_1, Im f_1, ...] and Jacobian of the MRT null system
void mrt_null_residual(std::span<const double> x, std::span<const PhaseCoeffs> coeffs,
                       double wavelength, Eigen::VectorXd *r, Eigen::MatrixXd *jac) {
    const int n = static_cast<int>(x.size());
    const int k = static_cast<int>(coeffs.size());
    const double wn = kTwoPi / wavelength;
    r->resize(2 * k);
    if (jac)
        jac->resize(2 * k, n);
    for (int i = 0; i < k; ++i) {
        std::complex<double> f = 0.0;
        for (int m = 0; m < n; ++m) {
            const double psi = wn * (coeffs[i].a * x[m] + coeffs[i].b * x[m] * x[m]);
            const std::complex<double> e = std::polar(1.0, psi);
            f += e;
            if (jac) {
                const std::complex<double> df =
                    std::complex<double>(0.0, wn * (coeffs[i].a + 2.0 * coeffs[i].b * x[m])) * e;
                (*jac)(2 * i, m) = df.real();
                (*jac)(2 * i + 1, m) = df.imag();
            }
        }
        (*r)(2 * i) = f.real();
        (*r)(2 * i + 1) = f.imag();
    }
}

bool positions_feasible(std::span<const double> x, const ArrayLimits &limits) {
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    if (s.front() < -1e-12 || s.back() > limits.d_max + 1e-12)
        return false;
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] - s[i - 1] < limits.d_min - 1e-12)
            return false;
    return true;
}

} // namespace

MrtNullSolution solve_mrt_nulls(const PolarTarget &target0, std::span<const PolarTarget> users,
                                int n_antennas, const ArrayLimits &limits,
                                const GridSearchConfig &grid_cfg, int max_starts, uint64_t seed) {
    limits.validate();
    grid_cfg.validate(n_antennas);
    if (users.empty())
        throw Error(Errc::invalid_argument, "need at least one user to null");
    if (2 * static_cast<int>(users.size()) > n_antennas)
        throw Error(Errc::invalid_argument,
                    "MRT nulling needs 2K <= N (two real constraints per user)");

    std::vector<PhaseCoeffs> coeffs;
    coeffs.reserve(users.size());
    for (const auto &u : users)
        coeffs.push_back(phase_coeffs(target0, u));

    const auto grid = make_grid(limits.d_max, grid_cfg.samples_M);
    const auto objective = [&](std::span<const double> x) {
        Eigen::VectorXd r;
        mrt_null_residual(x, coeffs, limits.wavelength, &r, nullptr);
        return -r.squaredNorm();
    };
    auto seq = sequential_update(grid, initial_layout(grid, n_antennas, limits.d_min),
                                 limits.d_min, objective, grid_cfg.rounds_R);

    Philox rng(seed, 0x6e756c6c); // restart stream
    const int n = n_antennas;

    // Levenberg-Marquardt from one start point; returns the final residual
    const auto polish = [&](std::vector<double> x, std::vector<double> *out) {
        Eigen::VectorXd r;
        Eigen::MatrixXd jac;
        double mu = 1e-3;
        for (int it = 0; it < 200; ++it) {
            mrt_null_residual(x, coeffs, limits.wavelength, &r, &jac);
            const double rn = r.norm();
            if (rn < 1e-13 * n || mu > 1e8)
                break;
            const Eigen::MatrixXd h =
                jac.transpose() * jac + mu * Eigen::MatrixXd::Identity(n, n);
            const Eigen::VectorXd step = h.ldlt().solve(-jac.transpose() * r);
            std::vector<double> x_try(n);
            for (int i = 0; i < n; ++i)
                x_try[i] = x[i] + step(i);
            Eigen::VectorXd r_try;
            mrt_null_residual(x_try, coeffs, limits.wavelength, &r_try, nullptr);
            if (r_try.norm() < rn) {
                x = std::move(x_try);
                mu = std::max(mu * 0.3, 1e-12);
            } else {
                mu *= 3.0;
            }
        }
        mrt_null_residual(x, coeffs, limits.wavelength, &r, nullptr);
        *out = std::move(x);
        return r.norm();
    };

    MrtNullSolution best;
    best.residual = std::numeric_limits<double>::infinity();
    const int total_starts = std::max(1, max_starts);
    for (int start = 0; start < total_starts; ++start) {
        std::vector<double> x0;
        if (start == 0) {
            x0 = seq.positions;
        } else {
            x0.resize(n);
            for (int i = 0; i < n; ++i)
                x0[i] = rng.uniform(0.0, limits.d_max);
            std::sort(x0.begin(), x0.end());
            bool spaced = true;
            for (int i = 1; i < n; ++i)
                spaced = spaced && (x0[i] - x0[i - 1] >= limits.d_min);
            if (!spaced)
                continue;
        }
        std::vector<double> x;
        const double res = polish(std::move(x0), &x);
        if (res < best.residual && positions_feasible(x, limits)) {
            std::sort(x.begin(), x.end());
            best.apv = Apv(std::move(x));
            best.residual = res;
        }
        if (best.residual < 1e-12 * n)
            break;
    }

    if (!std::isfinite(best.residual))
        throw Error(Errc::infeasible, "MRT null refinement found no feasible point");
    return best;
}

} // namespace manf
