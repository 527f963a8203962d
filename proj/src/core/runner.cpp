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

#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "construct.hpp"
#include "csv.hpp"
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

std::vector<double> evaluate_gains(const ScenarioConfig &cfg, const Apv &apv,
                                   const BeamWeights &w) {
    const auto targets = all_targets(cfg);
    std::vector<double> g(targets.size());
    for (size_t i = 0; i < targets.size(); ++i)
        g[i] = beam_gain(apv.positions, w.weights, targets[i], cfg.wavelength, cfg.model);
    return g;
}

double min_of(const std::vector<double> &v) { return *std::min_element(v.begin(), v.end()); }

// multibeam weights for a fixed APV: full SCA from the equal-gain start
BeamWeights multibeam_weights(const ScenarioConfig &cfg, const Apv &apv) {
    const auto targets = all_targets(cfg);
    const auto w0 = equal_gain_start(apv, targets, cfg.wavelength, cfg.model);
    return solve_beamforming_subproblem(apv, targets, w0, cfg.wavelength, cfg.sca, cfg.model)
        .weights;
}

RunRecord finish_record(const ScenarioConfig &cfg, RunRecord rec) {
    rec.scenario = cfg.scenario;
    rec.scheme = cfg.scheme;
    rec.gains = evaluate_gains(cfg, rec.apv, rec.weights);
    rec.objective =
        cfg.scenario == ScenarioKind::nulling ? rec.gains.front() : min_of(rec.gains);
    return rec;
}

} // namespace

RunRecord run_scenario(const ScenarioConfig &cfg) {
    cfg.validate();
    if (cfg.scheme == Scheme::construct)
        return run_construct(cfg);

    RunRecord rec;
    rec.command = cfg.scenario == ScenarioKind::nulling ? "null" : "multibeam";

    if (cfg.scenario == ScenarioKind::nulling) {
        if (static_cast<int>(cfg.users.size()) >= cfg.n_antennas)
            throw Error(Errc::invalid_argument, "beam nulling needs K < N");
        switch (cfg.scheme) {
        case Scheme::proposed: {
            auto sol = solve_p2(cfg.target0, cfg.users, cfg.n_antennas, cfg.limits, cfg.grid,
                                cfg.model);
            rec.apv = std::move(sol.apv);
            rec.weights = std::move(sol.zf.weights);
            rec.trace = std::move(sol.trace);
            break;
        }
        case Scheme::fpa:
        case Scheme::sa:
        case Scheme::as: {
            const auto kind = cfg.scheme == Scheme::fpa  ? BaselineKind::FPA
                              : cfg.scheme == Scheme::sa ? BaselineKind::SA
                                                         : BaselineKind::AS;
            rec.apv = baseline_apv(kind, cfg);
            rec.weights = zf_weights(rec.apv, cfg.target0, cfg.users, cfg.wavelength, cfg.model)
                              .weights;
            break;
        }
        case Scheme::pso: {
            auto sol = pso_solve(cfg);
            rec.apv = std::move(sol.apv);
            rec.weights = zf_weights(rec.apv, cfg.target0, cfg.users, cfg.wavelength, cfg.model)
                              .weights;
            break;
        }
        case Scheme::ff: {
            auto sol = far_field_solve(cfg);
            rec.apv = std::move(sol.apv);
            rec.weights = std::move(sol.weights); // evaluated near-field below
            break;
        }
        default:
            throw Error(Errc::internal, "unhandled scheme");
        }
    } else {
        switch (cfg.scheme) {
        case Scheme::proposed: {
            auto sol = solve_p3(cfg.target0, cfg.users, cfg.n_antennas, cfg.limits, cfg.grid,
                                cfg.sca, cfg.ao, cfg.model);
            rec.apv = std::move(sol.apv);
            rec.weights = std::move(sol.weights);
            rec.trace = std::move(sol.trace);
            break;
        }
        case Scheme::fpa:
        case Scheme::sa:
        case Scheme::as: {
            const auto kind = cfg.scheme == Scheme::fpa  ? BaselineKind::FPA
                              : cfg.scheme == Scheme::sa ? BaselineKind::SA
                                                         : BaselineKind::AS;
            rec.apv = baseline_apv(kind, cfg);
            rec.weights = multibeam_weights(cfg, rec.apv);
            break;
        }
        case Scheme::pso: {
            auto sol = pso_solve(cfg);
            rec.apv = std::move(sol.apv);
            rec.weights = multibeam_weights(cfg, rec.apv);
            break;
        }
        case Scheme::ff: {
            auto sol = far_field_solve(cfg);
            rec.apv = std::move(sol.apv);
            rec.weights = std::move(sol.weights);
            break;
        }
        default:
            throw Error(Errc::internal, "unhandled scheme");
        }
    }
    return finish_record(cfg, std::move(rec));
}

RunRecord run_construct(const ScenarioConfig &cfg) {
    cfg.validate();
    RunRecord rec;
    rec.command = "construct";
    if (cfg.scenario == ScenarioKind::nulling) {
        rec.apv = construct_optimal_apv(cfg.target0, cfg.users, cfg.n_antennas, cfg.limits,
                                        cfg.construct.strict);
    } else {
        std::vector<PhaseCoeffs> coeffs;
        for (const auto &u : cfg.users)
            coeffs.push_back(phase_coeffs(cfg.target0, u));
        const auto spacing =
            grating_lobe_spacing(coeffs, cfg.limits, cfg.construct.max_denominator);
        rec.apv = uniform_apv(cfg.n_antennas, spacing.d_star);
        if (cfg.construct.strict && rec.apv.positions.back() > cfg.limits.d_max + 1e-12)
            throw Error(Errc::infeasible, "uniform grating-lobe APV exceeds d_max");
    }
    rec.weights = mrt_weights(rec.apv, cfg.target0, cfg.wavelength, cfg.model);
    auto out = finish_record(cfg, std::move(rec));
    out.command = "construct";
    return out;
}

namespace {

// exact worst-case evaluation: beam gains at the shifted positions under MRT
// re-pointed at the shifted array (the phase-difference convention of the
// sensitivity model)
double exact_leak_sum(const ScenarioConfig &cfg, const Apv &apv,
                      std::span<const double> delta_d) {
    std::vector<double> x = apv.positions;
    for (size_t i = 0; i < x.size(); ++i)
        x[i] += delta_d[i];
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const Apv shifted(sorted);
    const auto w = mrt_weights(shifted, cfg.target0, cfg.wavelength, cfg.model);
    double sum = 0.0;
    for (const auto &u : cfg.users)
        sum += beam_gain(shifted, w, u, cfg.wavelength, cfg.model);
    return sum;
}

} // namespace

RunRecord run_robust(const ScenarioConfig &cfg) {
    cfg.validate();
    if (cfg.users.empty())
        throw Error(Errc::invalid_argument, "position-error analysis needs at least one user");

    RunRecord rec;
    rec.command = "robust";
    rec.epsilon = cfg.robust.epsilon;

    // nominal APV satisfying the scenario premise
    if (cfg.scenario == ScenarioKind::nulling) {
        auto sol = solve_mrt_nulls(cfg.target0, cfg.users, cfg.n_antennas, cfg.limits, cfg.grid,
                                   4000, cfg.seed);
        rec.apv = std::move(sol.apv);
        rec.null_residual = sol.residual;
    } else {
        if (cfg.users.size() == 1) {
            const auto coeffs = phase_coeffs(cfg.target0, cfg.users[0]);
            rec.apv = aligned_apv_single(coeffs, cfg.n_antennas, cfg.limits);
        } else {
            std::vector<PhaseCoeffs> coeffs;
            for (const auto &u : cfg.users)
                coeffs.push_back(phase_coeffs(cfg.target0, u));
            const auto spacing =
                grating_lobe_spacing(coeffs, cfg.limits, cfg.robust.max_denominator);
            rec.apv = uniform_apv(cfg.n_antennas, spacing.d_star);
        }
    }
    rec.weights = mrt_weights(rec.apv, cfg.target0, cfg.wavelength, cfg.model);

    const auto model = build_sensitivity(rec.apv, cfg.target0, cfg.users, cfg.wavelength);
    rec.sum_abs_D = model.D.cwiseAbs().sum();
    const int k = static_cast<int>(cfg.users.size());
    const int n = cfg.n_antennas;

    const double sweep_max = cfg.robust.sweep_max_eps_over_lambda * cfg.wavelength;
    std::vector<double> eps_list;
    for (int i = 1; i <= cfg.robust.sweep_points; ++i)
        eps_list.push_back(sweep_max * i / cfg.robust.sweep_points);

    if (cfg.scenario == ScenarioKind::nulling) {
        const auto wc =
            worstcase_nulling(model, cfg.robust.epsilon, cfg.robust.randomization_draws,
                              cfg.seed);
        rec.delta_d = wc.delta_d;
        rec.leakage = wc.leakage;
        rec.sdr_bound = wc.sdr_upper_bound;
        for (double eps : eps_list) {
            const auto w =
                worstcase_nulling(model, eps, cfg.robust.randomization_draws, cfg.seed);
            RobustSweepRow row;
            row.epsilon = eps;
            row.approx = w.leakage / n;
            row.exact = exact_leak_sum(cfg, rec.apv, w.delta_d);
            row.upper_bound = w.sdr_upper_bound / n;
            rec.sweep.push_back(row);
        }
    } else {
        const auto wc = worstcase_multibeam(model, cfg.robust.epsilon);
        rec.delta_d = wc.delta_d;
        rec.approx_sum_gain = wc.approx_sum_gain;
        for (double eps : eps_list) {
            const auto w = worstcase_multibeam(model, eps);
            RobustSweepRow row;
            row.epsilon = eps;
            row.approx = w.approx_sum_gain;
            row.exact = exact_leak_sum(cfg, rec.apv, w.delta_d);
            row.upper_bound = static_cast<double>(k) * n; // ideal sum gain
            rec.sweep.push_back(row);
        }
    }
    return finish_record(cfg, std::move(rec));
}

MonteCarloResult monte_carlo(const ScenarioConfig &cfg, std::span<const Scheme> schemes) {
    cfg.validate();
    if (schemes.empty())
        throw Error(Errc::invalid_argument, "no schemes selected");

    MonteCarloResult mc;
    mc.schemes.assign(schemes.begin(), schemes.end());
    mc.trials = cfg.drops.trials;

    const int k = static_cast<int>(cfg.users.size());
    for (int trial = 0; trial < cfg.drops.trials; ++trial) {
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 100)
                throw Error(Errc::infeasible, "trial re-drawn 100 times without success");
            // substream per (trial, attempt): identical drops for every scheme
            Philox rng(cfg.seed, (static_cast<uint64_t>(trial) << 20) | attempt);
            ScenarioConfig drop = cfg;
            drop.target0.distance_R = rng.uniform(cfg.drops.distance_min, cfg.drops.distance_max);
            drop.target0.angle_theta = rng.uniform(cfg.drops.angle_min, cfg.drops.angle_max);
            for (int u = 0; u < k; ++u) {
                drop.users[u].distance_R =
                    rng.uniform(cfg.drops.distance_min, cfg.drops.distance_max);
                drop.users[u].angle_theta = rng.uniform(cfg.drops.angle_min, cfg.drops.angle_max);
            }
            drop.seed = rng.next_u64();

            std::vector<double> row;
            row.reserve(schemes.size());
            try {
                for (Scheme s : schemes) {
                    ScenarioConfig sc = drop;
                    sc.scheme = s;
                    row.push_back(run_scenario(sc).objective);
                }
            } catch (const Error &e) {
                if (e.code() == Errc::rank_deficient || e.code() == Errc::degenerate_direction) {
                    ++mc.redrawn;
                    continue;
                }
                throw;
            }
            mc.objectives.push_back(std::move(row));
            break;
        }
    }

    const int ns = static_cast<int>(schemes.size());
    mc.means.assign(ns, 0.0);
    mc.stderrs.assign(ns, 0.0);
    for (int s = 0; s < ns; ++s) {
        double sum = 0.0;
        for (const auto &row : mc.objectives)
            sum += row[s];
        mc.means[s] = sum / mc.trials;
        double var = 0.0;
        for (const auto &row : mc.objectives)
            var += (row[s] - mc.means[s]) * (row[s] - mc.means[s]);
        mc.stderrs[s] = mc.trials > 1 ? std::sqrt(var / (mc.trials - 1) / mc.trials) : 0.0;
    }
    return mc;
}

HeatmapResult heatmap(const ScenarioConfig &cfg, const RunRecord &record) {
    HeatmapResult hm;
    const auto &h = cfg.heatmap;
    if (h.nx < 2 || h.ny < 2)
        throw Error(Errc::invalid_argument, "heatmap grid needs at least 2x2 points");
    hm.xs.resize(h.nx);
    hm.ys.resize(h.ny);
    for (int i = 0; i < h.nx; ++i)
        hm.xs[i] = h.x_min + (h.x_max - h.x_min) * i / (h.nx - 1);
    for (int j = 0; j < h.ny; ++j)
        hm.ys[j] = h.y_min + (h.y_max - h.y_min) * j / (h.ny - 1);

    hm.gains.resize(h.ny, h.nx);
    for (int j = 0; j < h.ny; ++j)
        for (int i = 0; i < h.nx; ++i) {
            const double r = std::hypot(hm.xs[i], hm.ys[j]);
            if (r < 1e-6) {
                hm.gains(j, i) = 0.0;
                continue;
            }
            PolarTarget p{r, std::atan2(std::abs(hm.ys[j]), hm.xs[i])};
            hm.gains(j, i) = beam_gain(record.apv.positions, record.weights.weights, p,
                                       cfg.wavelength, cfg.model);
        }
    return hm;
}

std::string record_summary_json(const RunRecord &record, const ScenarioConfig &cfg) {
    nlohmann::json j;
    j["command"] = record.command;
    j["scenario"] = to_string(record.scenario);
    j["scheme"] = to_string(record.scheme);
    j["n_antennas"] = cfg.n_antennas;
    j["wavelength"] = cfg.wavelength;
    j["seed"] = cfg.seed;
    j["positions"] = record.apv.positions;
    j["gains"] = record.gains;
    j["objective"] = record.objective;
    if (record.command == "robust") {
        j["epsilon"] = record.epsilon;
        j["delta_d"] = record.delta_d;
        j["sum_abs_D"] = record.sum_abs_D;
        if (record.scenario == ScenarioKind::nulling) {
            j["leakage"] = record.leakage;
            j["sdr_upper_bound"] = record.sdr_bound;
            j["null_residual"] = record.null_residual;
        } else {
            j["approx_sum_gain"] = record.approx_sum_gain;
        }
    }
    return j.dump(2) + "\n";
}

namespace {

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error(Errc::io, "cannot open " + path.string() + " for writing");
    os << text;
    if (!os)
        throw Error(Errc::io, "write failed for " + path.string());
}

std::filesystem::path ensure_dir(const std::string &out_dir) {
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error(Errc::io, "cannot create output directory " + out_dir);
    return dir;
}

} // namespace

void write_run_outputs(const RunRecord &record, const ScenarioConfig &cfg,
                       const std::string &out_dir) {
    const auto dir = ensure_dir(out_dir);

    Table pos;
    pos.header = {"antenna", "x_m"};
    for (int i = 0; i < record.apv.size(); ++i)
        pos.add_row({std::to_string(i), fmt_double(record.apv.positions[i])});
    write_csv(pos, dir / "positions.csv");

    Table wt;
    wt.header = {"antenna", "re", "im"};
    for (int i = 0; i < record.weights.size(); ++i)
        wt.add_row({std::to_string(i), fmt_double(record.weights.weights[i].real()),
                    fmt_double(record.weights.weights[i].imag())});
    write_csv(wt, dir / "weights.csv");

    Table gn;
    gn.header = {"user", "distance_m", "angle_rad", "gain"};
    const std::vector<PolarTarget> targets = [&] {
        std::vector<PolarTarget> t{cfg.target0};
        t.insert(t.end(), cfg.users.begin(), cfg.users.end());
        return t;
    }();
    for (size_t i = 0; i < record.gains.size(); ++i)
        gn.add_row({std::to_string(i), fmt_double(targets[i].distance_R),
                    fmt_double(targets[i].angle_theta), fmt_double(record.gains[i])});
    write_csv(gn, dir / "gains.csv");

    if (!record.trace.empty()) {
        Table tr;
        tr.header = {"step", "objective"};
        for (size_t i = 0; i < record.trace.size(); ++i)
            tr.add_row({std::to_string(i), fmt_double(record.trace[i])});
        write_csv(tr, dir / "trace.csv");
    }

    if (record.command == "robust") {
        Table dd;
        dd.header = {"antenna", "delta_m"};
        for (size_t i = 0; i < record.delta_d.size(); ++i)
            dd.add_row({std::to_string(i), fmt_double(record.delta_d[i])});
        write_csv(dd, dir / "delta_d.csv");

        Table sw;
        if (record.scenario == ScenarioKind::nulling)
            sw.header = {"epsilon_m", "approx_leak_gain", "exact_leak_gain", "sdr_bound_gain"};
        else
            sw.header = {"epsilon_m", "approx_sum_gain", "exact_sum_gain", "ideal_sum_gain"};
        for (const auto &row : record.sweep)
            sw.add_row({fmt_double(row.epsilon), fmt_double(row.approx), fmt_double(row.exact),
                        fmt_double(row.upper_bound)});
        write_csv(sw, dir / "robust_sweep.csv");
    }

    write_text(dir / "summary.json", record_summary_json(record, cfg));
    write_text(dir / "config.json", config_to_json_text(cfg));
}

void write_montecarlo_outputs(const MonteCarloResult &mc, const ScenarioConfig &cfg,
                              const std::string &out_dir) {
    const auto dir = ensure_dir(out_dir);

    Table summary;
    summary.header = {"scheme", "trials", "mean", "stderr", "redrawn"};
    for (size_t s = 0; s < mc.schemes.size(); ++s)
        summary.add_row({to_string(mc.schemes[s]), std::to_string(mc.trials),
                         fmt_double(mc.means[s]), fmt_double(mc.stderrs[s]),
                         std::to_string(mc.redrawn)});
    write_csv(summary, dir / "montecarlo.csv");

    Table trials;
    trials.header = {"trial"};
    for (auto s : mc.schemes)
        trials.header.push_back(to_string(s));
    for (size_t t = 0; t < mc.objectives.size(); ++t) {
        std::vector<std::string> row{std::to_string(t)};
        for (double v : mc.objectives[t])
            row.push_back(fmt_double(v));
        trials.add_row(std::move(row));
    }
    write_csv(trials, dir / "trials.csv");
    write_text(dir / "config.json", config_to_json_text(cfg));
}

void write_heatmap_outputs(const HeatmapResult &hm, const ScenarioConfig &cfg,
                           const std::string &out_dir) {
    const auto dir = ensure_dir(out_dir);

    Table grid;
    grid.header = {"y_index"};
    for (size_t i = 0; i < hm.xs.size(); ++i)
        grid.header.push_back("x" + std::to_string(i));
    for (int j = 0; j < hm.gains.rows(); ++j) {
        std::vector<std::string> row{std::to_string(j)};
        for (int i = 0; i < hm.gains.cols(); ++i)
            row.push_back(fmt_double(hm.gains(j, i)));
        grid.add_row(std::move(row));
    }
    write_csv(grid, dir / "heatmap.csv");

    Table axes;
    axes.header = {"axis", "index", "value_m"};
    for (size_t i = 0; i < hm.xs.size(); ++i)
        axes.add_row({"x", std::to_string(i), fmt_double(hm.xs[i])});
    for (size_t j = 0; j < hm.ys.size(); ++j)
        axes.add_row({"y", std::to_string(j), fmt_double(hm.ys[j])});
    write_csv(axes, dir / "heatmap_axes.csv");
    write_text(dir / "config.json", config_to_json_text(cfg));
}

} // namespace manf
