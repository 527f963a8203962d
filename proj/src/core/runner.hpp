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

#include <optional>
#include <string>

#include "baselines.hpp"
#include "robustness.hpp"
#include "scenario.hpp"

namespace manf {

struct RobustSweepRow {
    double epsilon = 0.0;
    double approx = 0.0; // first-order worst case, beam-gain scale (1/N applied)
    double exact = 0.0;  // perturbed-gain evaluation at the optimized error
    double upper_bound = 0.0; // SDR certificate (nulling scenario only)
};

struct RunRecord {
    std::string command;
    ScenarioKind scenario = ScenarioKind::nulling;
    Scheme scheme = Scheme::proposed;
    Apv apv;
    BeamWeights weights;
    std::vector<double> gains; // target first, then the K users
    double objective = 0.0;    // nulling: target gain; multibeam: min gain
    std::vector<double> trace;

    // robust command extras
    double epsilon = 0.0;
    std::vector<double> delta_d;
    double leakage = 0.0;        // un-normalized first-order leakage at epsilon
    double sdr_bound = 0.0;
    double approx_sum_gain = 0.0; // multibeam closed form at epsilon
    double sum_abs_D = 0.0;
    double null_residual = 0.0;
    std::vector<RobustSweepRow> sweep;
};

/// Solve one scenario with the configured scheme ("null" / "multibeam").
RunRecord run_scenario(const ScenarioConfig &cfg);

/// Closed-form constructions: Algorithm-1 nulling or Theorem-1 grating lobes.
RunRecord run_construct(const ScenarioConfig &cfg);

/// Position-error analysis on a premise-satisfying nominal APV.
RunRecord run_robust(const ScenarioConfig &cfg);

struct MonteCarloResult {
    std::vector<Scheme> schemes;
    std::vector<std::vector<double>> objectives; // [trial][scheme]
    std::vector<double> means;
    std::vector<double> stderrs;
    int trials = 0;
    int redrawn = 0; // trials re-sampled after degenerate geometry
};

/// Seed-pinned random user drops, every scheme scored on identical drops with
/// the identical gain evaluator.
MonteCarloResult monte_carlo(const ScenarioConfig &cfg, std::span<const Scheme> schemes);

struct HeatmapResult {
    std::vector<double> xs; // meters, along the track axis
    std::vector<double> ys; // meters, broadside
    Eigen::MatrixXd gains;  // ny x nx
};

/// Beam-gain map of a solved record over a Cartesian grid.
HeatmapResult heatmap(const ScenarioConfig &cfg, const RunRecord &record);

std::string record_summary_json(const RunRecord &record, const ScenarioConfig &cfg);

/// CSV + provenance emission; every byte is a function of (config, seed).
void write_run_outputs(const RunRecord &record, const ScenarioConfig &cfg,
                       const std::string &out_dir);
void write_montecarlo_outputs(const MonteCarloResult &mc, const ScenarioConfig &cfg,
                              const std::string &out_dir);
void write_heatmap_outputs(const HeatmapResult &hm, const ScenarioConfig &cfg,
                           const std::string &out_dir);

} // namespace manf
