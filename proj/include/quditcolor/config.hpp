#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quditcolor/errors.hpp"
#include "quditcolor/evolution.hpp"
#include "quditcolor/graph.hpp"
#include "quditcolor/interactions.hpp"
#include "quditcolor/presets.hpp"

namespace quditcolor {

using json = nlohmann::json;

struct AnalysisOptions {
    double threshold = 1e-3;
    std::vector<double> spectrum_times;
    int spectrum_levels = 12;
};

// Fully resolved single run.
struct RunSpec {
    std::string preset;  // empty for custom runs
    ProblemGraph graph;
    Optimizer optimizer = Optimizer::ThreeRydberg;
    LevelScheme levels;
    DrivePlan plan;
    AnnealOptions evolution;
    AnalysisOptions analysis;
    json resolved;  // canonical echo of everything above
};

enum class SweepMode { Anneal, Validate };

struct SweepAxis {
    std::string name;
    std::vector<json> values;
};

struct RunConfig {
    json raw;  // the config document with sweep/output blocks removed
    std::string out_dir = "out";
    int workers = 1;
    SweepMode sweep_mode = SweepMode::Anneal;
    std::vector<SweepAxis> axes;
};

namespace detail {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

inline void require_object(const json& j, const char* what) {
    if (!j.is_object()) throw ConfigError(std::string(what) + " must be an object");
}

inline void check_keys(const json& j, const char* what, std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError(std::string("unknown field '") + key + "' in " + what);
    }
}

inline std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw ConfigError("linspace needs at least one point");
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    return out;
}

inline std::vector<json> axis_values(const json& v, const std::string& name) {
    if (v.is_array()) {
        if (v.empty()) throw ConfigError("sweep axis '" + name + "' is empty");
        return std::vector<json>(v.begin(), v.end());
    }
    if (v.is_object()) {
        check_keys(v, "sweep range", {"from", "to", "steps"});
        const int steps = get_or<int>(v, "steps", 0);
        if (steps < 1) throw ConfigError("sweep axis '" + name + "' needs steps >= 1");
        std::vector<json> out;
        for (double x : linspace(v.at("from").get<double>(), v.at("to").get<double>(), steps)) out.emplace_back(x);
        return out;
    }
    throw ConfigError("sweep axis '" + name + "' must be a list or {from, to, steps}");
}

inline ProblemGraph graph_from_json(const json& g, Optimizer opt) {
    require_object(g, "graph");
    check_keys(g, "graph", {"builtin", "name", "positions", "edges", "spacing"});
    if (g.contains("builtin")) {
        const auto name = g.at("builtin").get<std::string>();
        if (g.contains("spacing")) return builtin_graph_at(name, g.at("spacing").get<double>());
        return builtin_graph(name, opt);
    }
    if (!g.contains("positions") || !g.contains("edges"))
        throw ConfigError("custom graph needs 'positions' and 'edges'");
    std::vector<Position> pos;
    for (const auto& p : g.at("positions")) {
        if (!p.is_array() || p.size() < 2 || p.size() > 3) throw ConfigError("positions must be [x, y] or [x, y, z]");
        pos.push_back({p[0].get<double>(), p[1].get<double>(), p.size() == 3 ? p[2].get<double>() : 0.0});
    }
    std::vector<Edge> edges;
    for (const auto& e : g.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ConfigError("edges must be pairs of 1-based vertex ids");
        edges.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
    }
    double spacing = get_or<double>(g, "spacing", 0.0);
    if (spacing <= 0.0) {
        spacing = std::numeric_limits<double>::infinity();
        for (const auto& [u, v] : edges)
            if (u >= 0 && v >= 0 && u < static_cast<int>(pos.size()) && v < static_cast<int>(pos.size()) && u != v)
                spacing = std::min(spacing, distance(pos[u], pos[v]));
        if (!std::isfinite(spacing)) spacing = 0.0;
    }
    return ProblemGraph(get_or<std::string>(g, "name", "custom"), std::move(pos), std::move(edges), spacing);
}

inline LevelScheme levels_from_json(const json& l, int default_k) {
    require_object(l, "levels");
    check_keys(l, "levels", {"preset", "k", "c6_intra", "c6_inter", "labels"});
    const int k = get_or<int>(l, "k", default_k);
    if (l.contains("preset")) return level_scheme_preset(l.at("preset").get<std::string>(), k);
    LevelScheme s;
    s.name = "custom";
    s.k = k;
    s.c6_intra = l.at("c6_intra").get<std::vector<double>>();
    s.c6_inter = l.at("c6_inter").get<std::vector<std::vector<double>>>();
    s.labels = get_or<std::vector<std::string>>(l, "labels", {});
    s.validate();
    return s;
}

inline StepRule parse_rule(const std::string& s) {
    if (s == "midpoint") return StepRule::Midpoint;
    if (s == "left") return StepRule::Left;
    throw ConfigError("step_rule must be 'midpoint' or 'left'");
}

inline const char* rule_name(StepRule r) { return r == StepRule::Midpoint ? "midpoint" : "left"; }

inline json graph_json(const ProblemGraph& g) {
    json pos = json::array(), edges = json::array();
    for (const auto& p : g.positions()) pos.push_back({p.x, p.y, p.z});
    for (const auto& [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
    return {{"name", g.name()}, {"spacing", g.spacing()}, {"positions", pos}, {"edges", edges}};
}

inline json levels_json(const LevelScheme& l) {
    return {{"name", l.name}, {"k", l.k}, {"c6_intra", l.c6_intra}, {"c6_inter", l.c6_inter}, {"labels", l.labels}};
}

inline json drive_json(const DrivePlan& p) {
    return {{"omega_max", p.omega_max}, {"delta_max", p.delta_max}, {"t_i", p.t_i},
            {"t_f", p.t_f},             {"T", p.T},                 {"trotter_steps", p.trotter_steps}};
}

}  // namespace detail

// Resolve a config document (without sweep handling) into one run.
inline RunSpec resolve_run(const json& cfg) {
    detail::require_object(cfg, "config");
    detail::check_keys(cfg, "config",
                       {"preset", "optimizer", "graph", "levels", "drive", "evolution", "analysis", "output", "sweep"});
    std::optional<ExperimentPreset> preset;
    if (cfg.contains("preset")) preset = find_preset(cfg.at("preset").get<std::string>());

    Optimizer opt = preset ? preset->optimizer : Optimizer::ThreeRydberg;
    if (cfg.contains("optimizer")) opt = parse_optimizer(cfg.at("optimizer").get<std::string>());

    std::optional<ProblemGraph> graph;
    if (cfg.contains("graph")) graph = detail::graph_from_json(cfg.at("graph"), opt);
    else if (preset) graph = builtin_graph(preset->graph, opt);
    else throw ConfigError("config needs a preset or a graph block");

    LevelScheme levels;
    if (cfg.contains("levels")) levels = detail::levels_from_json(cfg.at("levels"), level_count(opt));
    else if (preset) levels = level_scheme_preset(preset->levels, level_count(opt));
    else levels = level_scheme_preset("rb-65-70-75", level_count(opt));

    DrivePlan plan;
    if (preset) plan = preset->plan();
    if (cfg.contains("drive")) {
        const auto& d = cfg.at("drive");
        detail::require_object(d, "drive");
        detail::check_keys(d, "drive", {"omega_max", "delta_max", "t_i", "t_f", "T", "trotter_steps"});
        plan.omega_max = detail::get_or(d, "omega_max", plan.omega_max);
        plan.delta_max = detail::get_or(d, "delta_max", plan.delta_max);
        plan.t_i = detail::get_or(d, "t_i", plan.t_i);
        plan.t_f = detail::get_or(d, "t_f", plan.t_f);
        plan.T = detail::get_or(d, "T", plan.T);
        plan.trotter_steps = detail::get_or(d, "trotter_steps", plan.trotter_steps);
    }
    levels.validate();
    plan.validate(levels.k);

    AnnealOptions evo;
    if (cfg.contains("evolution")) {
        const auto& e = cfg.at("evolution");
        detail::require_object(e, "evolution");
        detail::check_keys(e, "evolution",
                           {"substeps", "substep_phase", "step_rule", "cutoff", "degeneracy_tol", "overlap_dim_limit"});
        evo.substeps = detail::get_or(e, "substeps", evo.substeps);
        evo.substep_phase = detail::get_or(e, "substep_phase", evo.substep_phase);
        evo.rule = detail::parse_rule(detail::get_or<std::string>(e, "step_rule", "midpoint"));
        if (e.contains("cutoff") && !e.at("cutoff").is_null()) evo.interactions.cutoff = e.at("cutoff").get<double>();
        evo.degeneracy_tol = detail::get_or(e, "degeneracy_tol", evo.degeneracy_tol);
        evo.overlap_dim_limit = detail::get_or(e, "overlap_dim_limit", evo.overlap_dim_limit);
    }
    if (evo.substeps < 0) throw ConfigError("evolution.substeps must be >= 0");
    if (!(evo.substep_phase > 0)) throw ConfigError("evolution.substep_phase must be > 0");
    if (!(evo.degeneracy_tol >= 0)) throw ConfigError("evolution.degeneracy_tol must be >= 0");

    AnalysisOptions an;
    if (cfg.contains("analysis")) {
        const auto& a = cfg.at("analysis");
        detail::require_object(a, "analysis");
        detail::check_keys(a, "analysis", {"threshold", "samples", "spectrum_times", "spectrum_levels"});
        an.threshold = detail::get_or(a, "threshold", an.threshold);
        evo.samples = detail::get_or(a, "samples", evo.samples);
        an.spectrum_times = detail::get_or(a, "spectrum_times", an.spectrum_times);
        an.spectrum_levels = detail::get_or(a, "spectrum_levels", an.spectrum_levels);
    }
    if (!(an.threshold >= 0 && an.threshold < 1)) throw ConfigError("analysis.threshold must be in [0, 1)");
    if (evo.samples < 1) throw ConfigError("analysis.samples must be >= 1");
    if (an.spectrum_levels < 1) throw ConfigError("analysis.spectrum_levels must be >= 1");

    RunSpec spec{preset ? preset->name : "", *graph, opt, levels, plan, evo, an, {}};
    spec.resolved = {
        {"preset", spec.preset},
        {"optimizer", std::string(to_string(opt))},
        {"graph", detail::graph_json(spec.graph)},
        {"levels", detail::levels_json(levels)},
        {"drive", detail::drive_json(plan)},
        {"evolution",
         {{"substeps", evo.substeps},
          {"substep_phase", evo.substep_phase},
          {"step_rule", detail::rule_name(evo.rule)},
          {"cutoff", evo.interactions.cutoff ? json(*evo.interactions.cutoff) : json(nullptr)},
          {"degeneracy_tol", evo.degeneracy_tol},
          {"overlap_dim_limit", evo.overlap_dim_limit}}},
        {"analysis",
         {{"threshold", an.threshold},
          {"samples", evo.samples},
          {"spectrum_times", an.spectrum_times},
          {"spectrum_levels", an.spectrum_levels}}},
    };
    return spec;
}

inline RunConfig parse_config(const json& doc) {
    detail::require_object(doc, "config");
    RunConfig rc;
    rc.raw = doc;
    if (doc.contains("output")) {
        const auto& o = doc.at("output");
        detail::require_object(o, "output");
        detail::check_keys(o, "output", {"dir"});
        rc.out_dir = detail::get_or<std::string>(o, "dir", rc.out_dir);
        rc.raw.erase("output");
    }
    if (doc.contains("sweep")) {
        const auto& s = doc.at("sweep");
        detail::require_object(s, "sweep");
        detail::check_keys(s, "sweep", {"mode", "workers", "axes"});
        const auto mode = detail::get_or<std::string>(s, "mode", "anneal");
        if (mode == "anneal") rc.sweep_mode = SweepMode::Anneal;
        else if (mode == "validate") rc.sweep_mode = SweepMode::Validate;
        else throw ConfigError("sweep.mode must be 'anneal' or 'validate'");
        rc.workers = detail::get_or(s, "workers", rc.workers);
        if (!s.contains("axes") || !s.at("axes").is_object() || s.at("axes").empty())
            throw ConfigError("sweep.axes must be a non-empty object");
        for (const auto& [name, values] : s.at("axes").items())
            rc.axes.push_back({name, detail::axis_values(values, name)});
        rc.raw.erase("sweep");
    }
    if (rc.workers < 1) throw ConfigError("sweep.workers must be >= 1");
    resolve_run(rc.raw);  // fail early on a bad base config
    return rc;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    try {
        return json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

inline RunConfig load_config(const std::string& path) { return parse_config(load_json_file(path)); }

// Apply one sweep coordinate to a config document. Axis names:
// preset, graph, spacing, trotter_steps, T, t_i, t_f, omega_max.<i>,
// delta_max.<i> (1-based level).
inline json apply_axis(json cfg, const std::string& axis, const json& value) {
    auto ensure = [&](const char* block) -> json& {
        if (!cfg.contains(block)) cfg[block] = json::object();
        return cfg[block];
    };
    auto resolved_vector = [&](const char* key) {
        const auto spec = resolve_run(cfg);
        return key == std::string("omega_max") ? spec.plan.omega_max : spec.plan.delta_max;
    };
    if (axis == "preset") {
        cfg["preset"] = value;
        return cfg;
    }
    if (axis == "graph") {
        json g = cfg.contains("graph") ? cfg["graph"] : json::object();
        g = {{"builtin", value}};
        cfg["graph"] = g;
        return cfg;
    }
    if (axis == "spacing") {
        const auto spec = resolve_run(cfg);
        if (!cfg.contains("graph")) {
            if (spec.preset.empty()) throw ConfigError("spacing axis needs a built-in graph");
            cfg["graph"] = {{"builtin", find_preset(spec.preset).graph}};
        }
        if (!cfg["graph"].contains("builtin")) throw ConfigError("spacing axis needs a built-in graph");
        cfg["graph"]["spacing"] = value;
        return cfg;
    }
    if (axis == "trotter_steps" || axis == "T" || axis == "t_i" || axis == "t_f") {
        ensure("drive")[axis] = value;
        return cfg;
    }
    for (const char* key : {"omega_max", "delta_max"}) {
        const std::string prefix = std::string(key) + ".";
        if (axis.rfind(prefix, 0) == 0) {
            const int i = std::stoi(axis.substr(prefix.size()));
            auto vec = resolved_vector(key);
            if (i < 1 || i > static_cast<int>(vec.size())) throw ConfigError("sweep axis '" + axis + "' out of range");
            vec[i - 1] = value.get<double>();
            ensure("drive")[key] = vec;
            return cfg;
        }
    }
    throw ConfigError("unknown sweep axis '" + axis + "'");
}

}  // namespace quditcolor
