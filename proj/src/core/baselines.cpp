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

#include "baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rng.hpp"

namespace manf {

namespace {

std::vector<PolarTarget> all_targets(const ScenarioConfig &cfg) {
    std::vector<PolarTarget> t;
    t.reserve(cfg.users.size() + 1);
    t.push_back(cfg.target0);
    t.insert(t.end(), cfg.users.begin(), cfg.users.end());
    return t;
}

Apv fpa_apv(const ScenarioConfig &cfg) {
    const int n = cfg.n_antennas;
    if ((n - 1) * cfg.limits.d_min > cfg.limits.d_max + 1e-12)
        throw Error(Errc::infeasible, "track cannot hold N antennas at d_min spacing");
    const double center = cfg.limits.d_max / 2.0;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i)
        x[i] = center + (i - (n - 1) / 2.0) * cfg.limits.d_min;
    return Apv(std::move(x));
}

Apv sa_apv(const ScenarioConfig &cfg) {
    const int n = cfg.n_antennas;
    const double spacing = cfg.limits.d_max / n;
    if (spacing < cfg.limits.d_min - 1e-12)
        throw Error(Errc::infeasible, "sparse-array spacing d_max/N violates d_min");
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i)
        x[i] = i * spacing;
    return Apv(std::move(x));
}

// grid with pitch d_min spanning the track, plus the search start on it
std::vector<double> antenna_selection_grid(const ScenarioConfig &cfg) {
    const int slots = static_cast<int>(std::floor(cfg.limits.d_max / cfg.limits.d_min + 1e-9));
    if (slots + 1 < cfg.n_antennas)
        throw Error(Errc::infeasible, "not enough d_min-pitch slots for N antennas");
    std::vector<double> grid(slots + 1);
    for (int i = 0; i <= slots; ++i)
        grid[i] = i * cfg.limits.d_min;
    return grid;
}

std::vector<double> antenna_selection_start(const ScenarioConfig &cfg,
                                            const std::vector<double> &grid) {
    // start from the FPA layout when it sits on the grid, so the search can
    // only improve on it
    const Apv fpa = fpa_apv(cfg);
    bool on_grid = true;
    for (double x : fpa.positions) {
        const double ratio = x / cfg.limits.d_min;
        on_grid = on_grid && std::abs(ratio - std::round(ratio)) < 1e-9;
    }
    if (on_grid)
        return fpa.positions;
    std::vector<double> init(cfg.n_antennas);
    const int slots = static_cast<int>(grid.size()) - 1;
    for (int i = 0; i < cfg.n_antennas; ++i)
        init[i] = grid[i * slots / std::max(1, cfg.n_antennas - 1)];
    return init;
}

Apv as_apv(const ScenarioConfig &cfg) {
    const auto grid = antenna_selection_grid(cfg);
    auto init = antenna_selection_start(cfg, grid);

    if (cfg.scenario == ScenarioKind::nulling) {
        const auto objective = [&](std::span<const double> x) {
            return zf_target_gain_or_veto(x, cfg.target0, cfg.users, cfg.wavelength, cfg.model);
        };
        auto seq = sequential_update(grid, std::move(init), cfg.limits.d_min, objective,
                                     cfg.grid.rounds_R);
        std::sort(seq.positions.begin(), seq.positions.end());
        return Apv(std::move(seq.positions));
    }

    // multi-beam: same alternating loop as the main solver, d_min-pitch grid
    const auto targets = all_targets(cfg);
    const auto x_step = [&](const std::vector<double> &positions, const Eigen::VectorXcd &w) {
        const auto objective = [&](std::span<const double> x) {
            double g = std::numeric_limits<double>::infinity();
            for (const auto &t : targets)
                g = std::min(g, beam_gain(x, w, t, cfg.wavelength, cfg.model));
            return g;
        };
        return sequential_update(grid, positions, cfg.limits.d_min, objective,
                                 cfg.grid.rounds_R)
            .positions;
    };
    return ao_maxmin(std::move(init), targets, cfg.wavelength, cfg.sca, cfg.ao, cfg.model,
                     x_step)
        .apv;
}

// feasibility repair shared by the swarm searches: clamp, order, shift
void repair(std::vector<double> &x, double d_min, double d_max) {
    const int n = static_cast<int>(x.size());
    for (double &v : x)
        v = std::clamp(v, 0.0, d_max);
    std::sort(x.begin(), x.end());
    for (int i = 1; i < n; ++i)
        x[i] = std::max(x[i], x[i - 1] + d_min);
    if (x.back() > d_max) {
        x.back() = d_max;
        for (int i = n - 2; i >= 0; --i)
            x[i] = std::min(x[i], x[i + 1] - d_min);
    }
}

// constriction-coefficient swarm over feasible layouts for a generic objective
std::pair<std::vector<double>, double>
swarm_search(const ScenarioConfig &cfg, Philox &rng,
             const std::function<double(std::span<const double>)> &fitness,
             const std::vector<double> *incumbent) {
    const int n = cfg.n_antennas;
    const int np = std::max(1, cfg.pso.particles);
    const double d_max = cfg.limits.d_max;
    const double d_min = cfg.limits.d_min;

    std::vector<std::vector<double>> pos(np, std::vector<double>(n));
    std::vector<std::vector<double>> vel(np, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> pbest(np);
    std::vector<double> pbest_val(np, -std::numeric_limits<double>::infinity());
    std::vector<double> gbest(n);
    double gbest_val = -std::numeric_limits<double>::infinity();

    for (int p = 0; p < np; ++p) {
        if (p == 0 && incumbent) {
            pos[p] = *incumbent;
        } else {
            for (int i = 0; i < n; ++i)
                pos[p][i] = rng.uniform(0.0, d_max);
            repair(pos[p], d_min, d_max);
        }
        pbest[p] = pos[p];
        pbest_val[p] = fitness(pos[p]);
        if (pbest_val[p] > gbest_val) {
            gbest_val = pbest_val[p];
            gbest = pos[p];
        }
    }

    const double vmax = d_max / 2.0;
    for (int it = 0; it < cfg.pso.iters; ++it) {
        for (int p = 0; p < np; ++p) {
            for (int i = 0; i < n; ++i) {
                const double r1 = rng.next_double();
                const double r2 = rng.next_double();
                vel[p][i] = cfg.pso.inertia * vel[p][i] +
                            cfg.pso.cognitive * r1 * (pbest[p][i] - pos[p][i]) +
                            cfg.pso.social * r2 * (gbest[i] - pos[p][i]);
                vel[p][i] = std::clamp(vel[p][i], -vmax, vmax);
                pos[p][i] += vel[p][i];
            }
            repair(pos[p], d_min, d_max);
            const double val = fitness(pos[p]);
            if (val > pbest_val[p]) {
                pbest_val[p] = val;
                pbest[p] = pos[p];
            }
            if (val > gbest_val) {
                gbest_val = val;
                gbest = pos[p];
            }
        }
    }
    return {std::move(gbest), gbest_val};
}

} // namespace

Apv baseline_apv(BaselineKind kind, const ScenarioConfig &cfg) {
    cfg.validate();
    switch (kind) {
    case BaselineKind::FPA: return fpa_apv(cfg);
    case BaselineKind::SA: return sa_apv(cfg);
    case BaselineKind::AS: return as_apv(cfg);
    default:
        throw Error(Errc::invalid_argument, "baseline_apv handles FPA, SA and AS only");
    }
}

PsoOutcome pso_solve(const ScenarioConfig &cfg) {
    cfg.validate();
    Philox rng(cfg.seed, 0x70736f); // "pso"
    PsoOutcome out;

    if (cfg.scenario == ScenarioKind::nulling) {
        const auto fitness = [&](std::span<const double> x) {
            return zf_target_gain_or_veto(x, cfg.target0, cfg.users, cfg.wavelength, cfg.model);
        };
        auto [best, value] = swarm_search(cfg, rng, fitness, nullptr);
        std::sort(best.begin(), best.end());
        out.apv = Apv(std::move(best));
        out.objective = value;
        return out;
    }

    // multi-beam: the swarm replaces the sequential position step inside the
    // alternating loop; the beamforming step stays SCA
    const auto targets = all_targets(cfg);
    const auto x_step = [&](const std::vector<double> &positions, const Eigen::VectorXcd &w) {
        const auto fitness = [&](std::span<const double> x) {
            double g = std::numeric_limits<double>::infinity();
            for (const auto &t : targets)
                g = std::min(g, beam_gain(x, w, t, cfg.wavelength, cfg.model));
            return g;
        };
        return swarm_search(cfg, rng, fitness, &positions).first;
    };
    const auto grid = make_grid(cfg.limits.d_max, cfg.grid.samples_M);
    auto sol = ao_maxmin(initial_layout(grid, cfg.n_antennas, cfg.limits.d_min), targets,
                         cfg.wavelength, cfg.sca, cfg.ao, cfg.model, x_step);
    out.apv = std::move(sol.apv);
    out.objective = sol.delta;
    return out;
}

FarFieldOutcome far_field_solve(const ScenarioConfig &cfg) {
    ScenarioConfig ff = cfg;
    ff.model = DistanceModel::far_field;
    FarFieldOutcome out;
    if (cfg.scenario == ScenarioKind::nulling) {
        auto sol = solve_p2(ff.target0, ff.users, ff.n_antennas, ff.limits, ff.grid, ff.model);
        out.apv = std::move(sol.apv);
        out.weights = std::move(sol.zf.weights);
    } else {
        auto sol = solve_p3(ff.target0, ff.users, ff.n_antennas, ff.limits, ff.grid, ff.sca,
                            ff.ao, ff.model);
        out.apv = std::move(sol.apv);
        out.weights = std::move(sol.weights);
    }
    return out;
}

} // namespace manf
