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

#include "multibeam_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "solvers.hpp"

namespace manf {

void ScaConfig::validate() const {
    if (!(tol_delta > 0.0) || max_iters < 1 || !(inner_kkt_tol > 0.0))
        throw Error(Errc::invalid_argument, "bad SCA configuration");
}

double surrogate_gain(const Eigen::VectorXcd &w, const Eigen::VectorXcd &w_t, const Apv &apv,
                      const PolarTarget &target, double wavelength, DistanceModel model) {
    if (w_t.norm() > 1.0 + 1e-12)
        throw Error(Errc::invalid_argument, "expansion point must satisfy ||w_t|| <= 1");
    const Eigen::VectorXcd a = steering_vector(apv, target, wavelength, model);
    const std::complex<double> at_wt = a.dot(w);  // a^H w
    const std::complex<double> at_t = a.dot(w_t); // a^H w_t
    // 2 Re{w_t^H a a^H w} - |a^H w_t|^2
    return 2.0 * (std::conj(at_t) * at_wt).real() - std::norm(at_t);
}

namespace {

Eigen::VectorXcd to_complex(const Eigen::VectorXd &u) {
    const int n = static_cast<int>(u.size()) / 2;
    Eigen::VectorXcd w(n);
    w.real() = u.head(n);
    w.imag() = u.tail(n);
    return w;
}

} // namespace

BeamWeights equal_gain_start(const Apv &apv, std::span<const PolarTarget> targets,
                             double wavelength, DistanceModel model) {
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(apv.size());
    for (const auto &t : targets)
        sum += steering_vector(apv, t, wavelength, model);
    const double nrm = sum.norm();
    if (nrm < 1e-9 * std::sqrt(static_cast<double>(apv.size())))
        sum = steering_vector(apv, targets[0], wavelength, model);
    return BeamWeights(sum / sum.norm());
}

namespace {

// slot-order variant shared by the AO loop, which must keep antenna slots
// paired with weight entries even when coordinates are momentarily unsorted
ScaSolution sca_at_positions(std::span<const double> positions,
                             std::span<const PolarTarget> targets, const BeamWeights &w_init,
                             double wavelength, const ScaConfig &cfg, DistanceModel model);

} // namespace

ScaSolution solve_beamforming_subproblem(const Apv &apv, std::span<const PolarTarget> targets,
                                         const BeamWeights &w_init, double wavelength,
                                         const ScaConfig &cfg, DistanceModel model) {
    apv.validate();
    return sca_at_positions(apv.positions, targets, w_init, wavelength, cfg, model);
}

namespace {

ScaSolution sca_at_positions(std::span<const double> positions,
                             std::span<const PolarTarget> targets, const BeamWeights &w_init,
                             double wavelength, const ScaConfig &cfg, DistanceModel model) {
    cfg.validate();
    if (targets.empty())
        throw Error(Errc::invalid_argument, "need at least one target");
    w_init.validate();

    const int n = static_cast<int>(positions.size());
    const int m = static_cast<int>(targets.size());
    Eigen::MatrixXcd steering(n, m);
    for (int c = 0; c < m; ++c)
        steering.col(c) = steering_vector(positions, targets[c], wavelength, model);

    Eigen::VectorXcd w = w_init.weights;
    ScaSolution sol;
    double prev_delta = -std::numeric_limits<double>::infinity();

    for (int it = 0; it < cfg.max_iters; ++it) {
        Eigen::MatrixXd C(m, 2 * n);
        Eigen::VectorXd gamma(m);
        for (int c = 0; c < m; ++c) {
            const Eigen::VectorXcd v = steering.col(c) * steering.col(c).dot(w); // Gamma w_t
            Eigen::VectorXd row(2 * n);
            row.head(n) = 2.0 * v.real();
            row.tail(n) = 2.0 * v.imag();
            C.row(c) = row;
            gamma(c) = std::norm(steering.col(c).dot(w));
        }
        const auto inner = maxmin_affine_unit_ball(C, gamma, cfg.inner_kkt_tol);
        w = to_complex(inner.u);
        sol.delta = inner.objective;
        sol.delta_trace.push_back(sol.delta);
        sol.iters = it + 1;
        if (sol.delta - prev_delta < cfg.tol_delta && it > 0)
            break;
        prev_delta = sol.delta;
    }

    if (w.norm() > 1.0)
        w /= w.norm() * (1.0 + 1e-15);
    sol.weights = BeamWeights(std::move(w));
    return sol;
}

} // namespace

P3Solution ao_maxmin(std::vector<double> init_positions, std::span<const PolarTarget> targets,
                     double wavelength, const ScaConfig &sca, const AoConfig &ao,
                     DistanceModel model, const PositionStep &x_step) {
    if (ao.max_iters < 1)
        throw Error(Errc::invalid_argument, "AO needs at least one iteration");
    if (targets.empty())
        throw Error(Errc::invalid_argument, "need at least one target");
    const int n = static_cast<int>(init_positions.size());
    const double lam = wavelength;

    auto gains_at = [&](std::span<const double> x, const Eigen::VectorXcd &w) {
        std::vector<double> g(targets.size());
        for (size_t c = 0; c < targets.size(); ++c)
            g[c] = beam_gain(x, w, targets[c], lam, model);
        return g;
    };

    // slot i of `positions` stays paired with weight entry i throughout
    std::vector<double> positions = std::move(init_positions);
    {
        std::vector<double> sorted = positions;
        std::sort(sorted.begin(), sorted.end());
        Apv(sorted).validate();
    }
    Eigen::VectorXcd wsum = Eigen::VectorXcd::Zero(n);
    for (const auto &t : targets)
        wsum += steering_vector(positions, t, lam, model);
    if (wsum.norm() < 1e-9 * std::sqrt(static_cast<double>(n)))
        wsum = steering_vector(positions, targets[0], lam, model);
    BeamWeights w(wsum / wsum.norm());

    P3Solution sol;
    double prev = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < ao.max_iters; ++it) {
        // beamforming step
        auto sca_sol = sca_at_positions(positions, targets, w, lam, sca, model);
        w = std::move(sca_sol.weights);

        // position step with the weights held fixed
        positions = x_step(positions, w.weights);

        const auto g = gains_at(positions, w.weights);
        const double delta = *std::min_element(g.begin(), g.end());
        sol.trace.push_back(delta);
        sol.ao_iters = it + 1;
        if (delta - prev < ao.tol && it > 0) {
            sol.converged = true;
            break;
        }
        prev = delta;
    }

    // canonical order: sort coordinates and carry the weight entries along
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return positions[a] < positions[b]; });
    std::vector<double> sorted(n);
    Eigen::VectorXcd w_sorted(n);
    for (int i = 0; i < n; ++i) {
        sorted[i] = positions[order[i]];
        w_sorted[i] = w.weights[order[i]];
    }

    sol.apv = Apv(std::move(sorted));
    sol.weights = BeamWeights(std::move(w_sorted));
    sol.per_user_gains = gains_at(sol.apv.positions, sol.weights.weights);
    sol.delta = *std::min_element(sol.per_user_gains.begin(), sol.per_user_gains.end());
    return sol;
}

P3Solution solve_p3(const PolarTarget &target0, std::span<const PolarTarget> users,
                    int n_antennas, const ArrayLimits &limits, const GridSearchConfig &grid_cfg,
                    const ScaConfig &sca, const AoConfig &ao, DistanceModel model) {
    limits.validate();
    grid_cfg.validate(n_antennas);

    std::vector<PolarTarget> targets;
    targets.reserve(users.size() + 1);
    targets.push_back(target0);
    targets.insert(targets.end(), users.begin(), users.end());
    const double lam = limits.wavelength;

    const auto grid = make_grid(limits.d_max, grid_cfg.samples_M);
    const auto x_step = [&](const std::vector<double> &positions, const Eigen::VectorXcd &w) {
        const auto objective = [&](std::span<const double> x) {
            double g = std::numeric_limits<double>::infinity();
            for (const auto &t : targets)
                g = std::min(g, beam_gain(x, w, t, lam, model));
            return g;
        };
        return sequential_update(grid, positions, limits.d_min, objective, grid_cfg.rounds_R)
            .positions;
    };

    return ao_maxmin(initial_layout(grid, n_antennas, limits.d_min), targets, lam, sca, ao,
                     model, x_step);
}

} // namespace manf
