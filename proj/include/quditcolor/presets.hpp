#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "quditcolor/errors.hpp"
#include "quditcolor/graph.hpp"
#include "quditcolor/interactions.hpp"

namespace quditcolor {

struct ExperimentPreset {
    std::string name;
    std::string description;
    std::string graph;
    Optimizer optimizer = Optimizer::ThreeRydberg;
    std::string levels;
    std::vector<double> omega_max;
    std::vector<double> delta_max;
    double t_i = 0.4;
    double t_f = 8.0;
    double T = 8.4;
    int trotter_steps = 300;

    DrivePlan plan() const {
        DrivePlan p;
        p.omega_max = omega_max;
        p.delta_max = delta_max;
        p.t_i = t_i;
        p.t_f = t_f;
        p.T = T;
        p.trotter_steps = trotter_steps;
        return p;
    }

    LevelScheme level_scheme() const { return level_scheme_preset(levels, level_count(optimizer)); }
    ProblemGraph problem_graph() const { return builtin_graph(graph, optimizer); }
};

namespace detail {

inline ExperimentPreset two_ryd(std::string name, std::string desc, std::string graph, std::vector<double> omega,
                                std::vector<double> delta) {
    return {std::move(name), std::move(desc), std::move(graph), Optimizer::TwoRydberg, "rb-65-70-75",
            std::move(omega), std::move(delta)};
}

inline ExperimentPreset three_ryd(std::string name, std::string desc, std::string graph,
                                  std::string levels = "rb-65-70-75", std::vector<double> omega = {1, 2, 5},
                                  std::vector<double> delta = {5, 10, 15}) {
    return {std::move(name), std::move(desc), std::move(graph), Optimizer::ThreeRydberg, std::move(levels),
            std::move(omega), std::move(delta)};
}

inline std::vector<ExperimentPreset> make_presets() {
    std::vector<ExperimentPreset> p;
    const std::pair<const char*, const char*> small[] = {
        {"triangle", "A"}, {"square", "B"}, {"diamond", "C"}, {"3fan", "D"}};
    for (const auto& [tag, g] : small) {
        p.push_back(two_ryd(std::string("fig4-") + tag + "-2ryd", std::string(tag) + ", 2-Rydberg annealer", g,
                            {3, 7}, {8, 19}));
        p.push_back(three_ryd(std::string("fig4-") + tag + "-3ryd", std::string(tag) + ", 3-Rydberg annealer", g));
    }
    p.push_back(two_ryd("fig5-trilattice-2ryd", "triangle-shape triangular lattice, 2-Rydberg", "E", {3, 7}, {12, 14}));
    p.push_back(three_ryd("fig5-trilattice-3ryd", "triangle-shape triangular lattice, 3-Rydberg", "E"));
    p.push_back(two_ryd("fig5-ladder-2ryd", "ladder-shape triangular lattice, 2-Rydberg", "F", {3, 7}, {12, 14}));
    p.push_back(two_ryd("fig5-ladder-2ryd-fig4drive", "ladder, 2-Rydberg with the small-graph detunings", "F",
                        {3, 7}, {8, 19}));
    p.push_back(three_ryd("fig5-ladder-3ryd", "ladder-shape triangular lattice, 3-Rydberg", "F"));
    p.push_back(three_ryd("fig6-triangleK4", "K4 as triangle with centre", "G"));
    p.push_back(three_ryd("fig6-squareK4", "K4 as square with diagonals", "H"));
    p.push_back(three_ryd("fig6-tetrahedron", "K4 as 3D tetrahedron", "I"));
    p.push_back(three_ryd("fig6-pentagon-3ryd", "wheel W6, 60S/65S/75S states", "J", "rb-60-65-75", {2, 3, 5},
                          {2.5, 10, 15}));
    p.push_back(two_ryd("fig8a-equal-drive", "diamond, equal detunings and equal Rabi", "C", {3, 3}, {10, 10}));
    p.push_back(two_ryd("fig8b-unequal-rabi", "diamond, equal detunings, unequal Rabi", "C", {3, 7}, {10, 10}));
    p.push_back(two_ryd("fig8c-optimized", "diamond, optimized unequal detunings", "C", {3, 3}, {8, 19}));
    return p;
}

}  // namespace detail

inline const std::vector<ExperimentPreset>& list_presets() {
    static const std::vector<ExperimentPreset> presets = detail::make_presets();
    return presets;
}

inline const ExperimentPreset& find_preset(std::string_view name) {
    for (const auto& p : list_presets())
        if (p.name == name) return p;
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace quditcolor
