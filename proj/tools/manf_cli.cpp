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
//
// Command-line front end. Links only the public C API.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "manf.h"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string scheme;
    std::string schemes; // montecarlo only
    long long seed = -1;
    std::vector<std::string> sets; // --set key=value overrides
};

void add_common(CLI::App *cmd, CommonOpts &o, bool with_scheme, bool with_schemes) {
    cmd->add_option("--config", o.config_path, "scenario configuration file (JSON)");
    cmd->add_option("--out-dir", o.out_dir, "output directory (CSV + summary)");
    cmd->add_option("--seed", o.seed, "override the RNG seed");
    cmd->add_option("--set", o.sets, "override a config key, e.g. --set grid.samples=300")
        ->take_all();
    if (with_scheme)
        cmd->add_option("--scheme", o.scheme,
                        "proposed | construct | fpa | sa | as | pso | ff");
    if (with_schemes)
        cmd->add_option("--schemes", o.schemes,
                        "comma-separated scheme list for the comparison");
}

int fail(int code) {
    std::fprintf(stderr, "error: %s\n", manf_last_error());
    return manf_exit_code(code);
}

int run_command(const std::string &command, const CommonOpts &o) {
    using ConfigPtr = std::unique_ptr<manf_config, decltype(&manf_config_free)>;
    ConfigPtr cfg(o.config_path.empty() ? manf_config_default()
                                        : manf_config_from_file(o.config_path.c_str()),
                  &manf_config_free);
    if (!cfg)
        return fail(MANF_ERR_INVALID_ARGUMENT);

    int rc;
    if (o.seed >= 0) {
        rc = manf_config_override(cfg.get(), "seed", std::to_string(o.seed).c_str());
        if (rc != MANF_OK)
            return fail(rc);
    }
    if (!o.scheme.empty()) {
        rc = manf_config_override(cfg.get(), "scheme", o.scheme.c_str());
        if (rc != MANF_OK)
            return fail(rc);
    }
    if (!o.schemes.empty()) {
        std::string list = "[";
        std::string item;
        for (char ch : o.schemes + ",") {
            if (ch == ',') {
                if (!item.empty())
                    list += (list.size() > 1 ? ",\"" : "\"") + item + "\"";
                item.clear();
            } else {
                item.push_back(ch);
            }
        }
        list += "]";
        rc = manf_config_override(cfg.get(), "montecarlo_schemes", list.c_str());
        if (rc != MANF_OK)
            return fail(rc);
    }
    for (const auto &kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
            return 2;
        }
        rc = manf_config_override(cfg.get(), kv.substr(0, eq).c_str(),
                                  kv.substr(eq + 1).c_str());
        if (rc != MANF_OK)
            return fail(rc);
    }

    std::string out_dir = o.out_dir;
    if (out_dir.empty())
        if (const char *env = std::getenv("MANF_OUT_DIR"))
            out_dir = env;

    manf_result *res = nullptr;
    rc = manf_run(cfg.get(), command.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), &res);
    if (rc != MANF_OK)
        return fail(rc);

    std::fputs(manf_result_summary(res), stdout);
    manf_result_free(res);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"manf: movable-antenna near-field beamforming toolkit"};
    app.require_subcommand(1);

    const struct {
        const char *name;
        const char *help;
        bool with_scheme;
        bool with_schemes;
    } commands[] = {
        {"null", "beam nulling: maximize the target gain with nulls at the undesired users",
         true, false},
        {"multibeam", "multi-beam forming: maximize the minimum gain over all users", true,
         false},
        {"construct", "closed-form layouts: quadratic-phase nulling or uniform grating lobes",
         false, false},
        {"robust", "worst-case analysis of bounded antenna position errors", false, false},
        {"heatmap", "solve, then map the beam gain over a Cartesian grid", true, false},
        {"montecarlo", "compare schemes over random user drops", false, true},
    };

    std::vector<CommonOpts> opts(std::size(commands));
    for (size_t i = 0; i < std::size(commands); ++i) {
        auto *cmd = app.add_subcommand(commands[i].name, commands[i].help);
        add_common(cmd, opts[i], commands[i].with_scheme, commands[i].with_schemes);
    }

    CLI11_PARSE(app, argc, argv);

    for (size_t i = 0; i < std::size(commands); ++i)
        if (app.got_subcommand(commands[i].name))
            return run_command(commands[i].name, opts[i]);
    return 2;
}
