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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/csv.hpp"
#include "core/rng.hpp"
#include "core/runner.hpp"

using namespace manf;

namespace {

std::string slurp(const std::filesystem::path &p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string &name) {
        path = std::filesystem::temp_directory_path() / name;
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

ScenarioConfig fast_cfg() {
    ScenarioConfig cfg;
    cfg.grid.samples_M = 120;
    cfg.grid.rounds_R = 4;
    cfg.pso.particles = 6;
    cfg.pso.iters = 8;
    return cfg;
}

} // namespace

TEST_CASE("philox reference vectors and streams") {
    SUBCASE("known-answer blocks") {
        const auto zero = Philox::block({0, 0, 0, 0}, {0, 0});
        CHECK(zero[0] == 0x6627e8d5u);
        CHECK(zero[1] == 0xe169c58du);
        CHECK(zero[2] == 0xbc57ac4cu);
        CHECK(zero[3] == 0x9b00dbd8u);
        const auto ones = Philox::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                        {0xffffffffu, 0xffffffffu});
        CHECK(ones[0] == 0x408f276du);
        CHECK(ones[1] == 0x41c83b0eu);
        CHECK(ones[2] == 0xa20bc7c6u);
        CHECK(ones[3] == 0x6d5451fdu);
    }

    SUBCASE("substreams are independent and reproducible") {
        Philox a(42, 0), b(42, 1), a2(42, 0);
        bool all_equal = true;
        for (int i = 0; i < 100; ++i) {
            const auto va = a.next_u64();
            all_equal = all_equal && va == b.next_u64();
            CHECK(va == a2.next_u64());
        }
        CHECK(!all_equal);
    }

    SUBCASE("uniform and normal moments are sane") {
        Philox rng(7, 3);
        double sum = 0.0, sum2 = 0.0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            const double v = rng.normal();
            sum += v;
            sum2 += v * v;
        }
        CHECK(std::abs(sum / n) < 0.03);
        CHECK(std::abs(sum2 / n - 1.0) < 0.05);
    }
}

TEST_CASE("csv round trip is exact") {
    Table t;
    t.header = {"a", "b"};
    Philox rng(17, 0);
    for (int i = 0; i < 50; ++i)
        t.add_row({fmt_double(rng.normal() * std::pow(10.0, i % 20 - 10)),
                   fmt_double(rng.next_double())});
    const std::string text = to_csv_string(t);
    const Table back = parse_csv_string(text);
    REQUIRE(back.header == t.header);
    REQUIRE(back.rows.size() == t.rows.size());
    for (size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(back.rows[i] == t.rows[i]);
        // and the parsed doubles are bit-identical
        for (size_t j = 0; j < 2; ++j)
            CHECK(parse_double(back.rows[i][j]) == parse_double(t.rows[i][j]));
    }
}

TEST_CASE("config parsing, defaults and overrides") {
    SUBCASE("defaults match the desk-scale settings") {
        const ScenarioConfig cfg;
        CHECK(cfg.wavelength == 0.06);
        CHECK(cfg.n_antennas == 6);
        CHECK(cfg.limits.d_min == doctest::Approx(0.03));
        CHECK(cfg.limits.d_max == doctest::Approx(0.54));
        CHECK(cfg.target0.distance_R == 4.72);
        CHECK(cfg.users.size() == 3);
    }

    SUBCASE("length expressions resolve against lambda and N") {
        const auto cfg = config_from_json_text(R"({
            "wavelength": 0.1, "n_antennas": 4,
            "limits": {"d_min": "lambda/2", "d_max": "1.5*N*lambda"}
        })");
        CHECK(cfg.limits.d_min == doctest::Approx(0.05));
        CHECK(cfg.limits.d_max == doctest::Approx(0.6));
    }

    SUBCASE("round trip through json") {
        ScenarioConfig cfg = fast_cfg();
        cfg.scenario = ScenarioKind::multibeam;
        cfg.seed = 77;
        const auto back = config_from_json_text(config_to_json_text(cfg));
        CHECK(back.seed == 77);
        CHECK(back.scenario == ScenarioKind::multibeam);
        CHECK(back.grid.samples_M == cfg.grid.samples_M);
        CHECK(config_to_json_text(back) == config_to_json_text(cfg));
    }

    SUBCASE("unknown keys are rejected") {
        CHECK_THROWS_AS((void)config_from_json_text(R"({"wavelenght": 0.06})"), Error);
    }

    SUBCASE("dotted overrides") {
        ScenarioConfig cfg;
        config_override(cfg, "grid.samples", "300");
        CHECK(cfg.grid.samples_M == 300);
        config_override(cfg, "scheme", "pso");
        CHECK(cfg.scheme == Scheme::pso);
        config_override(cfg, "users", R"([[6.1,2.18],[6,1.57]])");
        CHECK(cfg.users.size() == 2);
        CHECK_THROWS_AS(config_override(cfg, "grid.rounds", "0"), Error);
    }
}

TEST_CASE("run_scenario dispatch") {
    SUBCASE("empty user list under nulling degenerates to MRT") {
        ScenarioConfig cfg = fast_cfg();
        cfg.users.clear();
        const auto rec = run_scenario(cfg);
        CHECK(rec.objective == doctest::Approx(6.0).epsilon(1e-9));
    }

    SUBCASE("every scheme returns a feasible, bounded record") {
        ScenarioConfig cfg = fast_cfg();
        for (Scheme s : {Scheme::proposed, Scheme::fpa, Scheme::sa, Scheme::as, Scheme::pso,
                         Scheme::ff}) {
            cfg.scheme = s;
            const auto rec = run_scenario(cfg);
            CHECK(rec.apv.feasible(cfg.limits));
            CHECK(rec.gains.size() == 4);
            for (double g : rec.gains) {
                CHECK(g >= -1e-12);
                CHECK(g <= 6.0 + 1e-9);
            }
        }
    }

    SUBCASE("K >= N is rejected for nulling") {
        ScenarioConfig cfg = fast_cfg();
        cfg.n_antennas = 3;
        CHECK_THROWS_AS((void)run_scenario(cfg), Error);
    }
}

TEST_CASE("run outputs are deterministic byte for byte") {
    ScenarioConfig cfg = fast_cfg();
    TempDir d1("manf_det_1"), d2("manf_det_2");
    const auto rec1 = run_scenario(cfg);
    write_run_outputs(rec1, cfg, d1.path.string());
    const auto rec2 = run_scenario(cfg);
    write_run_outputs(rec2, cfg, d2.path.string());
    for (const char *name : {"positions.csv", "weights.csv", "gains.csv", "trace.csv",
                             "summary.json", "config.json"}) {
        CHECK(slurp(d1.path / name) == slurp(d2.path / name));
        CHECK(!slurp(d1.path / name).empty());
    }
}

TEST_CASE("monte carlo harness") {
    ScenarioConfig cfg = fast_cfg();
    cfg.drops.trials = 4;
    const std::vector<Scheme> schemes{Scheme::proposed, Scheme::fpa};

    SUBCASE("single trial equals a direct run on the same drop") {
        ScenarioConfig one = cfg;
        one.drops.trials = 1;
        const auto mc = monte_carlo(one, schemes);
        REQUIRE(mc.objectives.size() == 1);
        // reconstruct the drop from the same substream
        Philox rng(one.seed, 0);
        ScenarioConfig drop = one;
        drop.target0.distance_R = rng.uniform(one.drops.distance_min, one.drops.distance_max);
        drop.target0.angle_theta = rng.uniform(one.drops.angle_min, one.drops.angle_max);
        for (auto &u : drop.users) {
            u.distance_R = rng.uniform(one.drops.distance_min, one.drops.distance_max);
            u.angle_theta = rng.uniform(one.drops.angle_min, one.drops.angle_max);
        }
        drop.seed = rng.next_u64();
        drop.scheme = Scheme::proposed;
        CHECK(mc.objectives[0][0] == doctest::Approx(run_scenario(drop).objective));
    }

    SUBCASE("identical drops for every scheme ordering") {
        const auto mc_ab = monte_carlo(cfg, schemes);
        const std::vector<Scheme> reversed{Scheme::fpa, Scheme::proposed};
        const auto mc_ba = monte_carlo(cfg, reversed);
        for (int t = 0; t < 4; ++t) {
            CHECK(mc_ab.objectives[t][0] == mc_ba.objectives[t][1]);
            CHECK(mc_ab.objectives[t][1] == mc_ba.objectives[t][0]);
        }
    }

    SUBCASE("proposed never loses to FPA on a drop") {
        const auto mc = monte_carlo(cfg, schemes);
        for (const auto &row : mc.objectives)
            CHECK(row[0] >= row[1] - 1e-9);
    }
}

TEST_CASE("heatmap evaluation") {
    ScenarioConfig cfg = fast_cfg();
    cfg.heatmap.nx = 40;
    cfg.heatmap.ny = 20;
    const auto rec = run_scenario(cfg);
    const auto hm = heatmap(cfg, rec);

    SUBCASE("all values are physical") {
        for (int j = 0; j < hm.gains.rows(); ++j)
            for (int i = 0; i < hm.gains.cols(); ++i) {
                CHECK(hm.gains(j, i) >= 0.0);
                CHECK(hm.gains(j, i) <= cfg.n_antennas + 1e-9);
            }
    }

    SUBCASE("gain at a user's exact location reproduces the record") {
        for (size_t u = 0; u < cfg.users.size(); ++u) {
            const double g = beam_gain(rec.apv.positions, rec.weights.weights, cfg.users[u],
                                       cfg.wavelength, cfg.model);
            CHECK(g == doctest::Approx(rec.gains[u + 1]).epsilon(1e-12));
        }
    }

    SUBCASE("emitted files round trip") {
        TempDir dir("manf_heatmap");
        write_heatmap_outputs(hm, cfg, dir.path.string());
        const auto grid = read_csv(dir.path / "heatmap.csv");
        CHECK(grid.rows.size() == 20);
        CHECK(grid.header.size() == 41);
        const auto axes = read_csv(dir.path / "heatmap_axes.csv");
        CHECK(axes.rows.size() == 60);
    }
}

TEST_CASE("robust pipeline end to end") {
    SUBCASE("nulling scenario yields a premise-satisfying model and sweep") {
        ScenarioConfig cfg = fast_cfg();
        cfg.target0 = {5.0, 0.93};
        cfg.users = {{5.0, 2.21}, {6.08, 1.74}, {4.47, 0.46}};
        cfg.robust.sweep_points = 4;
        cfg.robust.randomization_draws = 50;
        const auto rec = run_robust(cfg);
        CHECK(rec.null_residual <= 1e-6);
        CHECK(rec.sweep.size() == 4);
        for (const auto &row : rec.sweep) {
            CHECK(row.approx >= 0.0);
            CHECK(row.exact >= 0.0);
            CHECK(row.upper_bound >= row.approx - 1e-12);
        }
        CHECK(rec.delta_d.size() == 6);
    }

    SUBCASE("multibeam scenario uses the aligned construction") {
        ScenarioConfig cfg = fast_cfg();
        cfg.scenario = ScenarioKind::multibeam;
        cfg.target0 = {8.94, 2.03};
        cfg.users = {{7.61, 1.16}};
        cfg.robust.sweep_points = 4;
        const auto rec = run_robust(cfg);
        CHECK(rec.approx_sum_gain <= 6.0 + 1e-12);
        for (const auto &row : rec.sweep) {
            CHECK(row.approx <= 6.0 + 1e-12);
            CHECK(row.exact <= 6.0 + 1e-9);
        }
    }
}
