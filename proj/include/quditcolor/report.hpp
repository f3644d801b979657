#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "quditcolor/analysis.hpp"
#include "quditcolor/classical.hpp"
#include "quditcolor/config.hpp"
#include "quditcolor/evolution.hpp"
#include "quditcolor/hamiltonian.hpp"
#include "quditcolor/interactions.hpp"

namespace quditcolor {

inline constexpr const char* kReportSchema = "quditcolor-report/1";
inline constexpr const char* kBasisConvention =
    "state labels list digits for v1..vN; digit 0 = ground, i = Rydberg level i; "
    "basis index = sum_v digit(v) * (k+1)^(v-1), so v1 is least significant";

inline json units_json() {
    return {{"frequency", "MHz (value of X/2pi)"}, {"time", "us"}, {"length", "um"}, {"c6", "GHz um^6"}};
}

inline std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

inline json encoding_json(const EncodingReport& r) {
    json shells = json::array();
    for (const auto& s : r.shells) shells.push_back({{"distance", s.distance}, {"edges", s.edge_count}, {"V", s.v}});
    json windows = json::array();
    for (const auto& w : r.windows)
        windows.push_back({{"level", w.level},
                           {"shell", w.shell},
                           {"lower", w.lower},
                           {"upper_config", w.upper_config},
                           {"upper_alpha", w.upper_alpha},
                           {"delta", w.delta},
                           {"lower_ok", w.lower_ok},
                           {"upper_config_ok", w.upper_config_ok},
                           {"upper_alpha_ok", w.upper_alpha_ok}});
    json out = {{"pass", r.pass}, {"alpha", r.alpha}, {"shells", shells}, {"windows", windows}, {"warnings", r.warnings}};
    if (r.spacing_applicable)
        out["spacing_window"] = {{"a_min", r.spacing.a_min}, {"a_max", r.spacing.a_max}, {"ok", r.spacing_ok}};
    return out;
}

inline json coloring_json(const Coloring& c) {
    std::string s;
    for (int x : c) s += std::to_string(x);
    return s;
}

inline json classical_json(const ProblemGraph& g) {
    json out;
    const auto chi = chromatic_bruteforce(g);
    out["chromatic"] = {{"chi", chi.chi}, {"witness", coloring_json(chi.witness)}, {"optimal_count", chi.optimal_count}};
    json rows = json::array();
    const std::pair<const char*, HeuristicResult> heur[] = {
        {"dsatur", dsatur(g)}, {"welsh_powell", welsh_powell(g)}, {"rlf_mis_first", rlf_mis_first(g)}};
    for (const auto& [name, r] : heur)
        rows.push_back({{"graph", g.name()}, {"solver", name}, {"colors", r.colors}, {"witness", coloring_json(r.coloring)}});
    out["heuristics"] = rows;
    json mis = json::array();
    for (int v : maximum_independent_set(g)) mis.push_back(v + 1);
    out["maximum_independent_set"] = mis;
    return out;
}

struct RunOutcome {
    json report;
    std::string trajectory_csv;
    std::string spectrum_csv;
    double valid_total = 0.0;
    double invalid_total = 0.0;
    std::string dominant_state;
    double dominant_probability = 0.0;
    std::string dominant_class;  // representative label
    bool dominant_class_valid = false;
    double dominant_class_fidelity = 0.0;
};

namespace detail {

inline std::vector<double> default_spectrum_times(const DrivePlan& plan) {
    const double lo = std::max(0.0, plan.T - 0.8);
    return linspace(lo, plan.T, 17);
}

inline std::string spectrum_csv(const SpectrumTrace& tr, const Basis& basis, const std::vector<int>& class_of,
                                const std::vector<bool>& mask) {
    std::ostringstream os;
    os << "time_us,level,energy_mhz,dominant_state,dominant_weight,class,valid\n";
    for (std::size_t t = 0; t < tr.times.size(); ++t)
        for (std::size_t j = 0; j < tr.values[t].size(); ++j) {
            const auto s = tr.dominant[t][j];
            os << fmt(tr.times[t]) << ',' << j << ',' << fmt(tr.values[t][j]) << ',' << basis.label(s) << ','
               << fmt(tr.dominant_weight[t][j]) << ',' << class_of[s] << ',' << (mask[s] ? 1 : 0) << '\n';
        }
    return os.str();
}

}  // namespace detail

// Encoding, classical and ground-state sections shared by validate and anneal.
inline json static_report(const RunSpec& spec) {
    const auto enc = validate_encoding(spec.graph, spec.levels, spec.plan);
    const Basis basis(spec.graph.size(), spec.levels.k);
    json gs = json::array();
    bool gs_valid = true;
    for (auto s : final_ground_states(spec.graph, spec.levels, spec.plan.delta_max, spec.evolution.degeneracy_tol,
                                      spec.evolution.interactions)) {
        gs.push_back(basis.label(s));
        gs_valid = gs_valid && is_valid_coloring(basis.decode(s), spec.graph);
    }
    json out;
    out["schema"] = kReportSchema;
    out["units"] = units_json();
    out["basis"] = kBasisConvention;
    out["config"] = spec.resolved;
    out["graph"] = {{"name", spec.graph.name()},
                    {"vertices", spec.graph.size()},
                    {"edges", spec.graph.edges().size()},
                    {"max_degree", spec.graph.max_degree()},
                    {"automorphism_order", automorphisms(spec.graph).order()},
                    {"dimension", basis.dim()}};
    out["encoding"] = encoding_json(enc);
    out["classical"] = classical_json(spec.graph);
    out["final_ground_states"] = {{"states", gs}, {"all_valid", gs_valid}};
    return out;
}

inline RunOutcome execute_run(const RunSpec& spec, bool with_spectrum = false) {
    RunOutcome res;
    json report = static_report(spec);
    const auto& g = spec.graph;
    const auto& levels = spec.levels;
    const Basis basis(g.size(), levels.k);

    ClassOptions copts;
    copts.include_invalid = true;
    copts.tol = spec.evolution.degeneracy_tol;
    copts.interactions = spec.evolution.interactions;
    const auto classes = degeneracy_classes(g, levels, spec.plan.delta_max, copts);
    const auto mask = valid_mask(g, levels.k);
    std::vector<int> class_of(basis.dim(), -1);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (auto s : classes[c].members) class_of[s] = static_cast<int>(c);

    // Tracked: every valid state, then the lowest valid classes, then the
    // classes holding final ground states.
    AnnealOptions evo = spec.evolution;
    std::vector<int> tracked_ids;
    {
        std::vector<std::size_t> all_valid;
        for (std::size_t s = 0; s < mask.size(); ++s)
            if (mask[s]) all_valid.push_back(s);
        evo.tracked = {all_valid};
        for (std::size_t c = 0; c < classes.size() && tracked_ids.size() < 8; ++c)
            if (classes[c].valid) tracked_ids.push_back(static_cast<int>(c));
        for (auto s : final_ground_states(g, levels, spec.plan.delta_max, spec.evolution.degeneracy_tol,
                                          spec.evolution.interactions))
            if (std::find(tracked_ids.begin(), tracked_ids.end(), class_of[s]) == tracked_ids.end())
                tracked_ids.push_back(class_of[s]);
        for (int c : tracked_ids) evo.tracked.push_back(classes[c].members);
    }

    const auto run = anneal(g, levels, spec.plan, evo);
    const auto& psi = run.state;
    const auto fid = fidelity_by_class(psi, classes, mask);
    const auto& tr = run.trajectory;

    double drift = 0.0;
    for (double n : tr.norm) drift = std::max(drift, std::abs(n - 1.0));

    json classes_json = json::array();
    std::set<int> listed;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const bool tracked = std::find(tracked_ids.begin(), tracked_ids.end(), static_cast<int>(c)) != tracked_ids.end();
        if (!(classes[c].valid || tracked || fid.per_class[c] >= spec.analysis.threshold)) continue;
        json members = json::array();
        for (auto s : classes[c].members) members.push_back(basis.label(s));
        classes_json.push_back({{"id", c},
                                {"representative", basis.label(classes[c].representative)},
                                {"size", classes[c].members.size()},
                                {"valid", classes[c].valid},
                                {"energy", classes[c].energy},
                                {"fidelity", fid.per_class[c]},
                                {"symmetry", classes[c].symmetry},
                                {"members", members}});
        listed.insert(static_cast<int>(c));
    }

    json decomposition = json::array();
    for (const auto& w : decompose(psi, spec.analysis.threshold))
        decomposition.push_back({{"state", basis.label(w.index)},
                                 {"probability", w.probability},
                                 {"valid", static_cast<bool>(mask[w.index])},
                                 {"class", class_of[w.index]}});

    int dominant_valid = -1;
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (classes[c].valid && (dominant_valid < 0 || fid.per_class[c] > fid.per_class[dominant_valid]))
            dominant_valid = static_cast<int>(c);

    json anneal_json = {{"final_norm", psi.norm()},
                        {"max_norm_drift", drift},
                        {"substeps_max", run.max_substeps},
                        {"substeps_total", run.total_substeps},
                        {"valid_total", fid.valid_total},
                        {"invalid_total", fid.invalid_total},
                        {"dominant_class", fid.dominant},
                        {"dominant_valid_class", dominant_valid},
                        {"decomposition", decomposition},
                        {"classes", classes_json}};
    if (dominant_valid >= 0) {
        json cc = json::array();
        for (const auto& info : mis_analysis(basis.decode(classes[dominant_valid].representative), g)) {
            json verts = json::array();
            for (int v : info.vertices) verts.push_back(v + 1);
            cc.push_back({{"label", info.label},
                          {"vertices", verts},
                          {"independent", info.independent},
                          {"maximal", info.maximal},
                          {"maximum", info.maximum}});
        }
        anneal_json["dominant_valid_color_classes"] = cc;
    }
    report["anneal"] = anneal_json;

    std::ostringstream csv;
    json columns = {"time_us", "norm", "energy_mhz", "ground_overlap", "valid_total"};
    for (int c : tracked_ids) columns.push_back("class_" + std::to_string(c));
    for (std::size_t i = 0; i < columns.size(); ++i) csv << (i ? "," : "") << columns[i].get<std::string>();
    csv << '\n';
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        csv << fmt(tr.times[i]) << ',' << fmt(tr.norm[i]) << ',' << fmt(tr.energy[i]) << ',' << fmt(tr.ground_overlap[i]);
        for (double x : tr.tracked[i]) csv << ',' << fmt(x);
        csv << '\n';
    }
    res.trajectory_csv = csv.str();
    report["trajectory"] = {{"file", "trajectory.csv"}, {"columns", columns}, {"samples", tr.times.size()}};

    if (with_spectrum) {
        auto times = spec.analysis.spectrum_times;
        if (times.empty()) times = detail::default_spectrum_times(spec.plan);
        const auto trace = instantaneous_spectrum(g, levels, spec.plan, times, spec.analysis.spectrum_levels,
                                                  spec.evolution.interactions);
        res.spectrum_csv = detail::spectrum_csv(trace, basis, class_of, mask);
        report["spectrum"] = {{"file", "spectrum.csv"},
                              {"columns",
                               {"time_us", "level", "energy_mhz", "dominant_state", "dominant_weight", "class", "valid"}},
                              {"times", times},
                              {"levels", spec.analysis.spectrum_levels}};
    }

    res.valid_total = fid.valid_total;
    res.invalid_total = fid.invalid_total;
    if (!decomposition.empty()) {
        res.dominant_state = decomposition[0]["state"];
        res.dominant_probability = decomposition[0]["probability"];
    }
    if (fid.dominant >= 0) {
        res.dominant_class = basis.label(classes[fid.dominant].representative);
        res.dominant_class_valid = classes[fid.dominant].valid;
        res.dominant_class_fidelity = fid.per_class[fid.dominant];
    }
    res.report = std::move(report);
    return res;
}

// Spectrum only, with class tags.
inline std::string spectrum_only(const RunSpec& spec) {
    const Basis basis(spec.graph.size(), spec.levels.k);
    ClassOptions copts;
    copts.include_invalid = true;
    copts.tol = spec.evolution.degeneracy_tol;
    copts.interactions = spec.evolution.interactions;
    const auto classes = degeneracy_classes(spec.graph, spec.levels, spec.plan.delta_max, copts);
    std::vector<int> class_of(basis.dim(), -1);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (auto s : classes[c].members) class_of[s] = static_cast<int>(c);
    auto times = spec.analysis.spectrum_times;
    if (times.empty()) times = detail::default_spectrum_times(spec.plan);
    const auto trace = instantaneous_spectrum(spec.graph, spec.levels, spec.plan, times, spec.analysis.spectrum_levels,
                                              spec.evolution.interactions);
    return detail::spectrum_csv(trace, basis, class_of, valid_mask(spec.graph, spec.levels.k));
}

// Write via a temporary file and rename.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline void write_outcome(const std::filesystem::path& dir, const RunOutcome& r) {
    write_atomic(dir / "report.json", r.report.dump(2) + "\n");
    write_atomic(dir / "trajectory.csv", r.trajectory_csv);
    if (!r.spectrum_csv.empty()) write_atomic(dir / "spectrum.csv", r.spectrum_csv);
}

// ---------------------------------------------------------------------------
// Sweeps.

struct SweepPoint {
    std::vector<json> coordinates;
    json config;
};

inline std::vector<SweepPoint> sweep_points(const RunConfig& rc) {
    if (rc.axes.empty()) throw ConfigError("sweep: no axes");
    std::vector<SweepPoint> points{{{}, rc.raw}};
    for (const auto& axis : rc.axes) {
        std::vector<SweepPoint> next;
        for (const auto& p : points)
            for (const auto& v : axis.values) {
                SweepPoint q = p;
                q.coordinates.push_back(v);
                q.config = apply_axis(q.config, axis.name, v);
                next.push_back(std::move(q));
            }
        points = std::move(next);
    }
    return points;
}

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << '\n';
        }
        return os.str();
    }
};

namespace detail {
inline std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fmt(v.get<double>());
    return v.dump();
}
}  // namespace detail

// Runs every point (concurrently up to rc.workers) and writes per-point
// outputs under out_dir/point_NNNN plus out_dir/sweep.csv.
inline SweepTable sweep(const RunConfig& rc, const std::filesystem::path& out_dir) {
    const auto points = sweep_points(rc);
    std::vector<std::vector<std::pair<std::string, std::string>>> results(points.size());
    std::vector<std::string> errors(points.size());
    std::atomic<std::size_t> next{0};

    auto work = [&]() {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            try {
                const auto spec = resolve_run(points[i].config);
                std::vector<std::pair<std::string, std::string>> row;
                row.emplace_back("graph", spec.graph.name());
                char dir[32];
                std::snprintf(dir, sizeof dir, "point_%04zu", i);
                if (rc.sweep_mode == SweepMode::Validate) {
                    const auto enc = validate_encoding(spec.graph, spec.levels, spec.plan);
                    write_atomic(out_dir / dir / "report.json", static_report(spec).dump(2) + "\n");
                    row.emplace_back("encoding_pass", enc.pass ? "1" : "0");
                    for (const auto& w : enc.windows) {
                        const std::string key = "L" + std::to_string(w.level) + "_S" + std::to_string(w.shell + 1);
                        row.emplace_back(key + "_lower", fmt(w.lower));
                        row.emplace_back(key + "_upper", fmt(w.upper_config));
                        row.emplace_back(key + "_ok", (w.lower_ok && w.upper_config_ok) ? "1" : "0");
                    }
                } else {
                    const auto out = execute_run(spec, !spec.analysis.spectrum_times.empty());
                    write_outcome(out_dir / dir, out);
                    row.emplace_back("encoding_pass", out.report["encoding"]["pass"].get<bool>() ? "1" : "0");
                    row.emplace_back("valid_total", fmt(out.valid_total));
                    row.emplace_back("invalid_total", fmt(out.invalid_total));
                    row.emplace_back("dominant_class", out.dominant_class);
                    row.emplace_back("dominant_class_valid", out.dominant_class_valid ? "1" : "0");
                    row.emplace_back("dominant_class_fidelity", fmt(out.dominant_class_fidelity));
                    row.emplace_back("dominant_state", out.dominant_state);
                    row.emplace_back("dominant_state_probability", fmt(out.dominant_probability));
                }
                results[i] = std::move(row);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const int n_workers = std::max(1, std::min<int>(rc.workers, static_cast<int>(points.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < n_workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < points.size(); ++i)
        if (!errors[i].empty()) throw ConfigError("sweep point " + std::to_string(i) + ": " + errors[i]);

    SweepTable table;
    table.columns.push_back("point");
    for (const auto& a : rc.axes) table.columns.push_back(a.name);
    std::vector<std::string> extra;
    for (const auto& r : results)
        for (const auto& [k, _] : r)
            if (std::find(extra.begin(), extra.end(), k) == extra.end()) extra.push_back(k);
    table.columns.insert(table.columns.end(), extra.begin(), extra.end());
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<std::string> row{std::to_string(i)};
        for (const auto& c : points[i].coordinates) row.push_back(detail::cell(c));
        for (const auto& k : extra) {
            std::string v;
            for (const auto& [kk, vv] : results[i])
                if (kk == k) v = vv;
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    write_atomic(out_dir / "sweep.csv", table.csv());
    return table;
}

}  // namespace quditcolor
