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

#include "scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace manf {

using nlohmann::json;

std::string to_string(ScenarioKind k) {
    return k == ScenarioKind::nulling ? "nulling" : "multibeam";
}

std::string to_string(Scheme s) {
    switch (s) {
    case Scheme::proposed: return "proposed";
    case Scheme::construct: return "construct";
    case Scheme::fpa: return "fpa";
    case Scheme::sa: return "sa";
    case Scheme::as: return "as";
    case Scheme::pso: return "pso";
    case Scheme::ff: return "ff";
    }
    return "?";
}

std::string to_string(DistanceModel m) {
    switch (m) {
    case DistanceModel::approx: return "approx";
    case DistanceModel::exact: return "exact";
    case DistanceModel::far_field: return "far_field";
    }
    return "?";
}

ScenarioKind scenario_from_string(const std::string &s) {
    if (s == "nulling")
        return ScenarioKind::nulling;
    if (s == "multibeam")
        return ScenarioKind::multibeam;
    throw Error(Errc::invalid_argument, "unknown scenario: " + s);
}

Scheme scheme_from_string(const std::string &s) {
    if (s == "proposed")
        return Scheme::proposed;
    if (s == "construct")
        return Scheme::construct;
    if (s == "fpa")
        return Scheme::fpa;
    if (s == "sa")
        return Scheme::sa;
    if (s == "as")
        return Scheme::as;
    if (s == "pso")
        return Scheme::pso;
    if (s == "ff")
        return Scheme::ff;
    throw Error(Errc::invalid_argument, "unknown scheme: " + s);
}

DistanceModel model_from_string(const std::string &s) {
    if (s == "approx")
        return DistanceModel::approx;
    if (s == "exact")
        return DistanceModel::exact;
    if (s == "far_field")
        return DistanceModel::far_field;
    throw Error(Errc::invalid_argument, "unknown distance model: " + s);
}

void DropDistribution::validate() const {
    if (trials < 1)
        throw Error(Errc::invalid_argument, "trials must be >= 1");
    if (!(angle_min >= 0.0 && angle_max <= kPi && angle_min < angle_max))
        throw Error(Errc::invalid_argument, "angle range must lie inside [0, pi]");
    if (!(distance_min > 0.0 && distance_min < distance_max))
        throw Error(Errc::invalid_argument, "bad distance range");
}

void ScenarioConfig::validate() const {
    if (!(wavelength > 0.0))
        throw Error(Errc::invalid_argument, "wavelength must be positive");
    if (n_antennas < 1)
        throw Error(Errc::invalid_argument, "need at least one antenna");
    limits.validate();
    target0.validate();
    for (const auto &u : users)
        u.validate();
    if ((n_antennas - 1) * limits.d_min > limits.d_max + 1e-12)
        throw Error(Errc::infeasible, "track cannot hold N antennas at d_min spacing");
    grid.validate(n_antennas);
    sca.validate();
    if (ao.max_iters < 1)
        throw Error(Errc::invalid_argument, "ao.max_iters must be >= 1");
    if (robust.epsilon < 0.0 || robust.randomization_draws < 0 || robust.sweep_points < 1 ||
        robust.max_denominator < 1)
        throw Error(Errc::invalid_argument, "bad robustness configuration");
    if (pso.particles < 1 || pso.iters < 0)
        throw Error(Errc::invalid_argument, "bad PSO configuration");
    drops.validate();
}

namespace {

// tiny product/quotient expressions over numbers, lambda and N: "9*lambda",
// "lambda/2", "1.5*N*lambda"
double eval_length_expr(const std::string &expr, double lambda, int n_antennas) {
    double acc = 1.0;
    bool divide = false;
    std::string tok;
    auto apply = [&](const std::string &t) {
        double v;
        if (t == "lambda")
            v = lambda;
        else if (t == "N")
            v = static_cast<double>(n_antennas);
        else {
            char *end = nullptr;
            v = std::strtod(t.c_str(), &end);
            if (end == t.c_str() || *end != '\0')
                throw Error(Errc::invalid_argument, "bad token in length expression: " + t);
        }
        acc = divide ? acc / v : acc * v;
    };
    for (char ch : expr) {
        if (ch == ' ')
            continue;
        if (ch == '*' || ch == '/') {
            if (tok.empty())
                throw Error(Errc::invalid_argument, "malformed length expression: " + expr);
            apply(tok);
            tok.clear();
            divide = ch == '/';
        } else {
            tok.push_back(ch);
        }
    }
    if (tok.empty())
        throw Error(Errc::invalid_argument, "malformed length expression: " + expr);
    apply(tok);
    return acc;
}

double length_field(const json &j, double lambda, int n_antennas) {
    if (j.is_number())
        return j.get<double>();
    if (j.is_string())
        return eval_length_expr(j.get<std::string>(), lambda, n_antennas);
    throw Error(Errc::invalid_argument, "length field must be a number or expression string");
}

PolarTarget target_field(const json &j) {
    PolarTarget t;
    if (j.is_array() && j.size() == 2) {
        t.distance_R = j[0].get<double>();
        t.angle_theta = j[1].get<double>();
    } else if (j.is_object()) {
        t.distance_R = j.at("distance").get<double>();
        t.angle_theta = j.at("angle").get<double>();
    } else {
        throw Error(Errc::invalid_argument, "target must be [distance, angle] or an object");
    }
    return t;
}

void require_known_keys(const json &j, std::initializer_list<const char *> known,
                        const std::string &where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char *k : known)
            ok = ok || it.key() == k;
        if (!ok)
            throw Error(Errc::invalid_argument, "unknown key '" + it.key() + "' in " + where);
    }
}

void apply_json(ScenarioConfig &cfg, const json &j) {
    if (!j.is_object())
        throw Error(Errc::invalid_argument, "config root must be a JSON object");
    require_known_keys(j,
                       {"wavelength", "n_antennas", "limits", "target", "users", "scenario",
                        "scheme", "model", "seed", "grid", "sca", "ao", "robust", "pso", "drops",
                        "heatmap", "construct", "montecarlo_schemes"},
                       "config");

    if (j.contains("wavelength"))
        cfg.wavelength = j["wavelength"].get<double>();
    if (j.contains("n_antennas"))
        cfg.n_antennas = j["n_antennas"].get<int>();
    cfg.limits.wavelength = cfg.wavelength;

    if (j.contains("limits")) {
        const auto &l = j["limits"];
        require_known_keys(l, {"d_min", "d_max"}, "limits");
        if (l.contains("d_min"))
            cfg.limits.d_min = length_field(l["d_min"], cfg.wavelength, cfg.n_antennas);
        if (l.contains("d_max"))
            cfg.limits.d_max = length_field(l["d_max"], cfg.wavelength, cfg.n_antennas);
    } else if (j.contains("wavelength") || j.contains("n_antennas")) {
        // keep the default limits proportional to the configured wavelength
        cfg.limits.d_min = cfg.wavelength / 2;
        cfg.limits.d_max = 9 * cfg.wavelength;
    }

    if (j.contains("target"))
        cfg.target0 = target_field(j["target"]);
    if (j.contains("users")) {
        cfg.users.clear();
        for (const auto &u : j["users"])
            cfg.users.push_back(target_field(u));
    }
    if (j.contains("scenario"))
        cfg.scenario = scenario_from_string(j["scenario"].get<std::string>());
    if (j.contains("scheme"))
        cfg.scheme = scheme_from_string(j["scheme"].get<std::string>());
    if (j.contains("model"))
        cfg.model = model_from_string(j["model"].get<std::string>());
    if (j.contains("seed"))
        cfg.seed = j["seed"].get<uint64_t>();

    if (j.contains("grid")) {
        const auto &g = j["grid"];
        require_known_keys(g, {"samples", "rounds"}, "grid");
        if (g.contains("samples"))
            cfg.grid.samples_M = g["samples"].get<int>();
        if (g.contains("rounds"))
            cfg.grid.rounds_R = g["rounds"].get<int>();
    }
    if (j.contains("sca")) {
        const auto &s = j["sca"];
        require_known_keys(s, {"tol_delta", "max_iters", "inner_kkt_tol"}, "sca");
        if (s.contains("tol_delta"))
            cfg.sca.tol_delta = s["tol_delta"].get<double>();
        if (s.contains("max_iters"))
            cfg.sca.max_iters = s["max_iters"].get<int>();
        if (s.contains("inner_kkt_tol"))
            cfg.sca.inner_kkt_tol = s["inner_kkt_tol"].get<double>();
    }
    if (j.contains("ao")) {
        const auto &a = j["ao"];
        require_known_keys(a, {"tol", "max_iters"}, "ao");
        if (a.contains("tol"))
            cfg.ao.tol = a["tol"].get<double>();
        if (a.contains("max_iters"))
            cfg.ao.max_iters = a["max_iters"].get<int>();
    }
    if (j.contains("robust")) {
        const auto &r = j["robust"];
        require_known_keys(
            r, {"epsilon", "draws", "max_denominator", "sweep_points", "sweep_max_eps_over_lambda"},
            "robust");
        if (r.contains("epsilon"))
            cfg.robust.epsilon = length_field(r["epsilon"], cfg.wavelength, cfg.n_antennas);
        if (r.contains("draws"))
            cfg.robust.randomization_draws = r["draws"].get<int>();
        if (r.contains("max_denominator"))
            cfg.robust.max_denominator = r["max_denominator"].get<long long>();
        if (r.contains("sweep_points"))
            cfg.robust.sweep_points = r["sweep_points"].get<int>();
        if (r.contains("sweep_max_eps_over_lambda"))
            cfg.robust.sweep_max_eps_over_lambda = r["sweep_max_eps_over_lambda"].get<double>();
    }
    if (j.contains("pso")) {
        const auto &p = j["pso"];
        require_known_keys(p, {"particles", "iters", "inertia", "cognitive", "social"},
                           "pso");
        if (p.contains("particles"))
            cfg.pso.particles = p["particles"].get<int>();
        if (p.contains("iters"))
            cfg.pso.iters = p["iters"].get<int>();
        if (p.contains("inertia"))
            cfg.pso.inertia = p["inertia"].get<double>();
        if (p.contains("cognitive"))
            cfg.pso.cognitive = p["cognitive"].get<double>();
        if (p.contains("social"))
            cfg.pso.social = p["social"].get<double>();
    }
    if (j.contains("drops")) {
        const auto &d = j["drops"];
        require_known_keys(d, {"trials", "angle_range", "distance_range"}, "drops");
        if (d.contains("trials"))
            cfg.drops.trials = d["trials"].get<int>();
        if (d.contains("angle_range")) {
            cfg.drops.angle_min = d["angle_range"][0].get<double>();
            cfg.drops.angle_max = d["angle_range"][1].get<double>();
        }
        if (d.contains("distance_range")) {
            cfg.drops.distance_min = d["distance_range"][0].get<double>();
            cfg.drops.distance_max = d["distance_range"][1].get<double>();
        }
    }
    if (j.contains("heatmap")) {
        const auto &h = j["heatmap"];
        require_known_keys(h, {"nx", "ny", "x_range", "y_range"}, "heatmap");
        if (h.contains("nx"))
            cfg.heatmap.nx = h["nx"].get<int>();
        if (h.contains("ny"))
            cfg.heatmap.ny = h["ny"].get<int>();
        if (h.contains("x_range")) {
            cfg.heatmap.x_min = h["x_range"][0].get<double>();
            cfg.heatmap.x_max = h["x_range"][1].get<double>();
        }
        if (h.contains("y_range")) {
            cfg.heatmap.y_min = h["y_range"][0].get<double>();
            cfg.heatmap.y_max = h["y_range"][1].get<double>();
        }
    }
    if (j.contains("construct")) {
        const auto &c = j["construct"];
        require_known_keys(c, {"strict", "max_denominator"}, "construct");
        if (c.contains("strict"))
            cfg.construct.strict = c["strict"].get<bool>();
        if (c.contains("max_denominator"))
            cfg.construct.max_denominator = c["max_denominator"].get<long long>();
    }
    if (j.contains("montecarlo_schemes")) {
        cfg.montecarlo_schemes.clear();
        for (const auto &s : j["montecarlo_schemes"])
            cfg.montecarlo_schemes.push_back(scheme_from_string(s.get<std::string>()));
    }
}

} // namespace

ScenarioConfig config_from_json_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(Errc::invalid_argument, std::string("config parse error: ") + e.what());
    }
    ScenarioConfig cfg;
    apply_json(cfg, j);
    cfg.validate();
    return cfg;
}

ScenarioConfig config_from_file(const std::string &path) {
    std::ifstream is(path);
    if (!is)
        throw Error(Errc::io, "cannot open config file " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return config_from_json_text(buf.str());
}

std::string config_to_json_text(const ScenarioConfig &cfg) {
    json j;
    j["wavelength"] = cfg.wavelength;
    j["n_antennas"] = cfg.n_antennas;
    j["limits"] = {{"d_min", cfg.limits.d_min}, {"d_max", cfg.limits.d_max}};
    j["target"] = {{"distance", cfg.target0.distance_R}, {"angle", cfg.target0.angle_theta}};
    j["users"] = json::array();
    for (const auto &u : cfg.users)
        j["users"].push_back({{"distance", u.distance_R}, {"angle", u.angle_theta}});
    j["scenario"] = to_string(cfg.scenario);
    j["scheme"] = to_string(cfg.scheme);
    j["model"] = to_string(cfg.model);
    j["seed"] = cfg.seed;
    j["grid"] = {{"samples", cfg.grid.samples_M}, {"rounds", cfg.grid.rounds_R}};
    j["sca"] = {{"tol_delta", cfg.sca.tol_delta},
                {"max_iters", cfg.sca.max_iters},
                {"inner_kkt_tol", cfg.sca.inner_kkt_tol}};
    j["ao"] = {{"tol", cfg.ao.tol}, {"max_iters", cfg.ao.max_iters}};
    j["robust"] = {{"epsilon", cfg.robust.epsilon},
                   {"draws", cfg.robust.randomization_draws},
                   {"max_denominator", cfg.robust.max_denominator},
                   {"sweep_points", cfg.robust.sweep_points},
                   {"sweep_max_eps_over_lambda", cfg.robust.sweep_max_eps_over_lambda}};
    j["pso"] = {{"particles", cfg.pso.particles},
                {"iters", cfg.pso.iters},
                {"inertia", cfg.pso.inertia},
                {"cognitive", cfg.pso.cognitive},
                {"social", cfg.pso.social}};
    j["drops"] = {{"trials", cfg.drops.trials},
                  {"angle_range", {cfg.drops.angle_min, cfg.drops.angle_max}},
                  {"distance_range", {cfg.drops.distance_min, cfg.drops.distance_max}}};
    j["heatmap"] = {{"nx", cfg.heatmap.nx},
                    {"ny", cfg.heatmap.ny},
                    {"x_range", {cfg.heatmap.x_min, cfg.heatmap.x_max}},
                    {"y_range", {cfg.heatmap.y_min, cfg.heatmap.y_max}}};
    j["construct"] = {{"strict", cfg.construct.strict},
                      {"max_denominator", cfg.construct.max_denominator}};
    j["montecarlo_schemes"] = json::array();
    for (auto s : cfg.montecarlo_schemes)
        j["montecarlo_schemes"].push_back(to_string(s));
    return j.dump(2) + "\n";
}

void config_override(ScenarioConfig &cfg, const std::string &dotted_key,
                     const std::string &value) {
    // build a nested patch object and re-apply it over the current config
    json patch;
    json *node = &patch;
    std::string key = dotted_key;
    size_t pos;
    while ((pos = key.find('.')) != std::string::npos) {
        node = &(*node)[key.substr(0, pos)];
        key = key.substr(pos + 1);
    }
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error &) {
        parsed = value; // plain string (scheme names, expressions, ...)
    }
    (*node)[key] = parsed;
    apply_json(cfg, patch);
    cfg.validate();
}

} // namespace manf
