#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "quditcolor.hpp"

namespace qc = quditcolor;
namespace fs = std::filesystem;

namespace {

struct CommonArgs {
    std::string config;
    std::string preset;
    std::string out;
    int samples = -1;
    double threshold = -1;
    int trotter_steps = -1;
    int workers = -1;
    std::string spectrum_times;
    int spectrum_levels = -1;
};

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw qc::ConfigError("--spectrum-times: cannot parse '" + item + "'");
        }
    }
    return out;
}

// Config document with command-line overrides folded in.
qc::json build_document(const CommonArgs& a, bool need_run) {
    qc::json doc = qc::json::object();
    if (!a.config.empty()) doc = qc::load_json_file(a.config);
    if (!doc.is_object()) throw qc::ConfigError("config must be a JSON object");
    if (!a.preset.empty()) doc["preset"] = a.preset;
    if (need_run && !doc.contains("preset") && !doc.contains("graph"))
        throw qc::ConfigError("give --preset NAME or --config PATH");
    auto block = [&](const char* name) -> qc::json& {
        if (!doc.contains(name)) doc[name] = qc::json::object();
        return doc[name];
    };
    if (a.samples >= 0) block("analysis")["samples"] = a.samples;
    if (a.threshold >= 0) block("analysis")["threshold"] = a.threshold;
    if (a.trotter_steps >= 0) block("drive")["trotter_steps"] = a.trotter_steps;
    if (!a.spectrum_times.empty()) block("analysis")["spectrum_times"] = parse_list(a.spectrum_times);
    if (a.spectrum_levels >= 0) block("analysis")["spectrum_levels"] = a.spectrum_levels;
    if (!a.out.empty()) block("output")["dir"] = a.out;
    if (a.workers >= 0 && doc.contains("sweep")) doc["sweep"]["workers"] = a.workers;
    return doc;
}

void add_common(CLI::App* cmd, CommonArgs& a, bool run_flags) {
    cmd->add_option("--config", a.config, "JSON config file");
    cmd->add_option("--preset", a.preset, "experiment preset name");
    cmd->add_option("--out", a.out, "output directory");
    if (!run_flags) return;
    cmd->add_option("--samples", a.samples, "trajectory sample intervals")->check(CLI::PositiveNumber);
    cmd->add_option("--threshold", a.threshold, "decomposition probability floor")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--trotter-steps", a.trotter_steps, "Trotter steps p")->check(CLI::PositiveNumber);
    cmd->add_option("--workers", a.workers, "concurrent sweep points")->check(CLI::PositiveNumber);
    cmd->add_option("--spectrum-times", a.spectrum_times, "comma-separated times in us");
    cmd->add_option("--spectrum-levels", a.spectrum_levels, "eigenvalues per time")->check(CLI::PositiveNumber);
}

std::string out_dir(const qc::json& doc) {
    if (doc.contains("output") && doc["output"].contains("dir")) return doc["output"]["dir"].get<std::string>();
    return "out";
}

int cmd_list_graphs() {
    std::printf("%-5s %-3s %-5s %-9s %-9s %s\n", "graph", "N", "edges", "a(2-ryd)", "a(3-ryd)", "description");
    for (const auto& name : qc::builtin_graph_names()) {
        const auto g = qc::builtin_graph(name, qc::Optimizer::ThreeRydberg);
        const auto a2 = qc::builtin_spacing(name, qc::Optimizer::TwoRydberg);
        std::printf("%-5s %-3d %-5zu %-9s %-9.2f %s\n", name.c_str(), g.size(), g.edges().size(),
                    a2 ? qc::fmt(*a2).c_str() : "-", g.spacing(), qc::builtin_graph_description(name).c_str());
    }
    return 0;
}

std::string vec_str(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + qc::fmt(v[i]);
    return s;
}

int cmd_list_presets() {
    std::printf("%-28s %-5s %-9s %-12s %-10s %-12s %s\n", "preset", "graph", "optimizer", "levels", "omega_max",
                "delta_max", "description");
    for (const auto& p : qc::list_presets())
        std::printf("%-28s %-5s %-9s %-12s %-10s %-12s %s\n", p.name.c_str(), p.graph.c_str(),
                    std::string(qc::to_string(p.optimizer)).c_str(), p.levels.c_str(), vec_str(p.omega_max).c_str(),
                    vec_str(p.delta_max).c_str(), p.description.c_str());
    return 0;
}

int cmd_validate(const CommonArgs& a) {
    const auto doc = build_document(a, true);
    const auto spec = qc::resolve_run(qc::parse_config(doc).raw);
    const auto report = qc::static_report(spec);
    if (doc.contains("output")) qc::write_atomic(fs::path(out_dir(doc)) / "report.json", report.dump(2) + "\n");
    std::cout << report["encoding"].dump(2) << "\n";
    std::cerr << (report["encoding"]["pass"].get<bool>() ? "encoding constraints satisfied\n"
                                                          : "warning: encoding constraints violated\n");
    return 0;
}

int cmd_anneal(const CommonArgs& a) {
    const auto doc = build_document(a, true);
    const auto spec = qc::resolve_run(qc::parse_config(doc).raw);
    const bool spectrum = !spec.analysis.spectrum_times.empty();
    const auto out = qc::execute_run(spec, spectrum);
    const fs::path dir = out_dir(doc);
    qc::write_outcome(dir, out);
    if (!out.report["encoding"]["pass"].get<bool>()) std::cerr << "warning: encoding constraints violated\n";
    std::printf("valid_total %.6f  dominant_class %s (%s, %.6f)  report %s\n", out.valid_total,
                out.dominant_class.c_str(), out.dominant_class_valid ? "valid" : "invalid",
                out.dominant_class_fidelity, (dir / "report.json").string().c_str());
    return 0;
}

int cmd_spectrum(CommonArgs a) {
    const auto doc = build_document(a, true);
    const auto spec = qc::resolve_run(qc::parse_config(doc).raw);
    const fs::path path = fs::path(out_dir(doc)) / "spectrum.csv";
    qc::write_atomic(path, qc::spectrum_only(spec));
    std::printf("%s\n", path.string().c_str());
    return 0;
}

int cmd_classical(const CommonArgs& a, const std::string& graph) {
    std::vector<qc::ProblemGraph> graphs;
    if (!a.config.empty() || !a.preset.empty()) {
        graphs.push_back(qc::resolve_run(qc::parse_config(build_document(a, true)).raw).graph);
    } else if (!graph.empty()) {
        graphs.push_back(qc::builtin_graph(graph, qc::Optimizer::ThreeRydberg));
    } else {
        for (const auto& n : qc::builtin_graph_names()) graphs.push_back(qc::builtin_graph(n, qc::Optimizer::ThreeRydberg));
    }
    for (const auto& g : graphs) {
        const auto c = qc::classical_json(g);
        std::cout << qc::json{{"graph", g.name()},
                              {"solver", "bruteforce"},
                              {"colors", c["chromatic"]["chi"]},
                              {"witness", c["chromatic"]["witness"]},
                              {"optimal_count", c["chromatic"]["optimal_count"]}}
                         .dump()
                  << "\n";
        for (const auto& row : c["heuristics"]) std::cout << row.dump() << "\n";
    }
    return 0;
}

int cmd_sweep(const CommonArgs& a) {
    const auto doc = build_document(a, false);
    if (!doc.contains("sweep") || !doc["sweep"].contains("axes"))
        throw qc::ConfigError("sweep needs a config with a sweep.axes block");
    const auto rc = qc::parse_config(doc);
    const auto table = qc::sweep(rc, rc.out_dir);
    std::cout << table.csv();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Qudit Rydberg annealing simulator for graph coloring"};
    app.require_subcommand(1);
    CommonArgs args;
    std::string graph;

    app.add_subcommand("list-graphs", "built-in benchmark graphs");
    app.add_subcommand("list-presets", "built-in experiment presets");
    auto* validate = app.add_subcommand("validate", "check encoding constraints");
    add_common(validate, args, false);
    auto* anneal = app.add_subcommand("anneal", "run the annealer and write report.json, trajectory.csv");
    add_common(anneal, args, true);
    auto* spectrum = app.add_subcommand("spectrum", "instantaneous spectrum to spectrum.csv");
    add_common(spectrum, args, true);
    auto* classical = app.add_subcommand("classical", "classical coloring solvers");
    add_common(classical, args, false);
    classical->add_option("--graph", graph, "built-in graph A..J");
    auto* sweep = app.add_subcommand("sweep", "parameter sweep from a config file");
    add_common(sweep, args, true);

    CLI11_PARSE(app, argc, argv);
    try {
        if (app.got_subcommand("list-graphs")) return cmd_list_graphs();
        if (app.got_subcommand("list-presets")) return cmd_list_presets();
        if (app.got_subcommand(validate)) return cmd_validate(args);
        if (app.got_subcommand(anneal)) return cmd_anneal(args);
        if (app.got_subcommand(spectrum)) return cmd_spectrum(args);
        if (app.got_subcommand(classical)) return cmd_classical(args, graph);
        if (app.got_subcommand(sweep)) return cmd_sweep(args);
    } catch (const qc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qc::DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
