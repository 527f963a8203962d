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

#include <cstdint>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "multibeam_opt.hpp"
#include "nulling_opt.hpp"

namespace manf {

enum class ScenarioKind { nulling, multibeam };

enum class Scheme { proposed, construct, fpa, sa, as, pso, ff };

std::string to_string(ScenarioKind k);
std::string to_string(Scheme s);
std::string to_string(DistanceModel m);
ScenarioKind scenario_from_string(const std::string &s);
Scheme scheme_from_string(const std::string &s);
DistanceModel model_from_string(const std::string &s);

struct RobustConfig {
    double epsilon = 0.009; // meters
    int randomization_draws = 1000;
    long long max_denominator = 50;
    int sweep_points = 10;
    double sweep_max_eps_over_lambda = 0.3;
};

struct PsoConfig {
    int particles = 50;
    int iters = 100;
    double inertia = 0.729;
    double cognitive = 1.494;
    double social = 1.494;
};

struct DropDistribution {
    double angle_min = 0.0;
    double angle_max = kPi;
    double distance_min = 3.0;
    double distance_max = 9.7;
    int trials = 100;

    void validate() const;
};

struct HeatmapConfig {
    int nx = 200;
    int ny = 100;
    double x_min = -10.0, x_max = 10.0;
    double y_min = 0.0, y_max = 10.0;
};

struct ConstructConfig {
    bool strict = false;
    long long max_denominator = 50;
};

struct ScenarioConfig {
    double wavelength = 0.06;
    int n_antennas = 6;
    ArrayLimits limits{9 * 0.06, 0.06 / 2, 0.06};
    PolarTarget target0{4.72, 1.01};
    std::vector<PolarTarget> users{{6.32, 1.89}, {5.0, 1.57}, {5.0, 0.93}};
    ScenarioKind scenario = ScenarioKind::nulling;
    Scheme scheme = Scheme::proposed;
    DistanceModel model = DistanceModel::approx;
    uint64_t seed = 1;

    GridSearchConfig grid;
    ScaConfig sca;
    AoConfig ao;
    RobustConfig robust;
    PsoConfig pso;
    DropDistribution drops;
    HeatmapConfig heatmap;
    ConstructConfig construct;
    std::vector<Scheme> montecarlo_schemes{Scheme::proposed, Scheme::fpa, Scheme::pso};

    void validate() const;
};

/// Load / parse configuration. Track limits accept small expressions in
/// lambda and N ("9*lambda", "lambda/2", "1.5*N*lambda").
ScenarioConfig config_from_json_text(const std::string &text);
ScenarioConfig config_from_file(const std::string &path);
std::string config_to_json_text(const ScenarioConfig &cfg);

/// Apply a dotted-path override with a string value, e.g. ("grid.samples",
/// "300") or ("users", "[[6.1,2.18],[6,1.57]]"). Used by CLI flags.
void config_override(ScenarioConfig &cfg, const std::string &dotted_key, const std::string &value);

} // namespace manf
