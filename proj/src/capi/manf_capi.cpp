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

#include "manf.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "core/runner.hpp"

using namespace manf;

struct manf_config {
    ScenarioConfig cfg;
};

struct manf_result {
    RunRecord record;
    std::string summary;
};

namespace {

thread_local std::string g_last_error;

int errc_to_code(Errc c) {
    switch (c) {
    case Errc::invalid_argument: return MANF_ERR_INVALID_ARGUMENT;
    case Errc::infeasible: return MANF_ERR_INFEASIBLE;
    case Errc::rank_deficient: return MANF_ERR_RANK_DEFICIENT;
    case Errc::degenerate_direction: return MANF_ERR_DEGENERATE_DIRECTION;
    case Errc::infeasible_factorization: return MANF_ERR_INFEASIBLE_FACTORIZATION;
    case Errc::negative_curvature: return MANF_ERR_NEGATIVE_CURVATURE;
    case Errc::irrational_input: return MANF_ERR_IRRATIONAL_INPUT;
    case Errc::empty_feasible_set: return MANF_ERR_EMPTY_FEASIBLE_SET;
    case Errc::solver_failure: return MANF_ERR_SOLVER_FAILURE;
    case Errc::not_nulled: return MANF_ERR_NOT_NULLED;
    case Errc::not_full_gain: return MANF_ERR_NOT_FULL_GAIN;
    case Errc::too_large: return MANF_ERR_TOO_LARGE;
    case Errc::io: return MANF_ERR_IO;
    case Errc::internal: return MANF_ERR_INTERNAL;
    }
    return MANF_ERR_INTERNAL;
}

template <typename F> int guarded(F &&fn) {
    try {
        fn();
        return MANF_OK;
    } catch (const Error &e) {
        g_last_error = e.what();
        return errc_to_code(e.code());
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return MANF_ERR_INTERNAL;
    }
}

template <typename F> auto guarded_ptr(F &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error &e) {
        g_last_error = e.what();
        return nullptr;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return nullptr;
    }
}

size_t copy_out(const std::vector<double> &v, double *out, size_t cap) {
    if (!out)
        return v.size();
    const size_t n = std::min(cap, v.size());
    std::memcpy(out, v.data(), n * sizeof(double));
    return n;
}

} // namespace

extern "C" {

const char *manf_version(void) { return "0.1.0"; }

const char *manf_last_error(void) { return g_last_error.c_str(); }

int manf_exit_code(int err) {
    if (err == MANF_OK)
        return 0;
    if (err == MANF_ERR_SOLVER_FAILURE || err == MANF_ERR_INTERNAL || err == MANF_ERR_IO)
        return 3;
    return 2;
}

manf_config *manf_config_default(void) {
    return guarded_ptr([] { return new manf_config{ScenarioConfig{}}; });
}

manf_config *manf_config_from_file(const char *path) {
    return guarded_ptr([&]() -> manf_config * {
        if (!path)
            throw Error(Errc::invalid_argument, "path is null");
        return new manf_config{config_from_file(path)};
    });
}

manf_config *manf_config_from_json(const char *json_text) {
    return guarded_ptr([&]() -> manf_config * {
        if (!json_text)
            throw Error(Errc::invalid_argument, "json_text is null");
        return new manf_config{config_from_json_text(json_text)};
    });
}

int manf_config_override(manf_config *cfg, const char *dotted_key, const char *value) {
    return guarded([&] {
        if (!cfg || !dotted_key || !value)
            throw Error(Errc::invalid_argument, "null argument");
        config_override(cfg->cfg, dotted_key, value);
    });
}

char *manf_config_to_json(const manf_config *cfg) {
    return guarded_ptr([&]() -> char * {
        if (!cfg)
            throw Error(Errc::invalid_argument, "config is null");
        const std::string text = config_to_json_text(cfg->cfg);
        char *out = new char[text.size() + 1];
        std::memcpy(out, text.c_str(), text.size() + 1);
        return out;
    });
}

void manf_config_free(manf_config *cfg) { delete cfg; }

void manf_string_free(char *s) { delete[] s; }

int manf_run(const manf_config *cfg, const char *command, const char *out_dir,
             manf_result **out) {
    return guarded([&] {
        if (!cfg || !command)
            throw Error(Errc::invalid_argument, "null argument");
        const std::string cmd = command;
        ScenarioConfig sc = cfg->cfg;
        RunRecord rec;

        if (cmd == "null" || cmd == "multibeam") {
            sc.scenario = cmd == "null" ? ScenarioKind::nulling : ScenarioKind::multibeam;
            rec = run_scenario(sc);
            if (out_dir)
                write_run_outputs(rec, sc, out_dir);
        } else if (cmd == "construct") {
            rec = run_construct(sc);
            if (out_dir)
                write_run_outputs(rec, sc, out_dir);
        } else if (cmd == "robust") {
            rec = run_robust(sc);
            if (out_dir)
                write_run_outputs(rec, sc, out_dir);
        } else if (cmd == "heatmap") {
            rec = run_scenario(sc);
            const auto hm = heatmap(sc, rec);
            if (out_dir) {
                write_run_outputs(rec, sc, out_dir);
                write_heatmap_outputs(hm, sc, out_dir);
            }
        } else if (cmd == "montecarlo") {
            const auto mc = monte_carlo(sc, sc.montecarlo_schemes);
            if (out_dir)
                write_montecarlo_outputs(mc, sc, out_dir);
            rec.command = "montecarlo";
            rec.scenario = sc.scenario;
            rec.scheme = sc.scheme;
            rec.apv = Apv({0.0});
            rec.weights = BeamWeights(Eigen::VectorXcd::Ones(1));
            rec.gains = mc.means;
            rec.objective = mc.means.empty() ? 0.0 : mc.means.front();
            if (out) {
                auto *res = new manf_result{std::move(rec), ""};
                nlohmann::json j;
                j["command"] = "montecarlo";
                j["trials"] = mc.trials;
                j["redrawn"] = mc.redrawn;
                for (size_t s = 0; s < mc.schemes.size(); ++s) {
                    j["means"][to_string(mc.schemes[s])] = mc.means[s];
                    j["stderrs"][to_string(mc.schemes[s])] = mc.stderrs[s];
                }
                res->summary = j.dump(2) + "\n";
                *out = res;
            }
            return;
        } else {
            throw Error(Errc::invalid_argument, "unknown command: " + cmd);
        }

        if (out) {
            auto *res = new manf_result{rec, record_summary_json(rec, sc)};
            *out = res;
        }
    });
}

size_t manf_result_num_antennas(const manf_result *res) {
    return res ? res->record.apv.positions.size() : 0;
}

size_t manf_result_num_users(const manf_result *res) {
    return res ? res->record.gains.size() : 0;
}

size_t manf_result_positions(const manf_result *res, double *out, size_t cap) {
    return res ? copy_out(res->record.apv.positions, out, cap) : 0;
}

size_t manf_result_weights(const manf_result *res, double *re, double *im, size_t cap) {
    if (!res)
        return 0;
    const auto &w = res->record.weights.weights;
    const size_t n = std::min(cap, static_cast<size_t>(w.size()));
    if (re && im)
        for (size_t i = 0; i < n; ++i) {
            re[i] = w[static_cast<Eigen::Index>(i)].real();
            im[i] = w[static_cast<Eigen::Index>(i)].imag();
        }
    return re && im ? n : static_cast<size_t>(w.size());
}

size_t manf_result_gains(const manf_result *res, double *out, size_t cap) {
    return res ? copy_out(res->record.gains, out, cap) : 0;
}

double manf_result_objective(const manf_result *res) {
    return res ? res->record.objective : 0.0;
}

const char *manf_result_summary(const manf_result *res) {
    return res ? res->summary.c_str() : "";
}

void manf_result_free(manf_result *res) { delete res; }

} // extern "C"
