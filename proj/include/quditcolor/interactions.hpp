#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quditcolor/errors.hpp"
#include "quditcolor/graph.hpp"

namespace quditcolor {

// C6 coefficients in GHz um^6 for k Rydberg levels. Levels are 1-based in
// the accessors (level 0 is the ground state and never interacts).
struct LevelScheme {
    std::string name;
    int k = 0;
    std::vector<double> c6_intra;               // size k
    std::vector<std::vector<double>> c6_inter;  // k x k, symmetric, diagonal unused
    std::vector<std::string> labels;

    double c6(int i, int j) const {
        if (i == j) return c6_intra.at(i - 1);
        return c6_inter.at(i - 1).at(j - 1);
    }

    void validate() const {
        if (k < 1 || k > 4) throw ConfigError("level scheme: k must be between 1 and 4");
        if (static_cast<int>(c6_intra.size()) != k)
            throw ConfigError("level scheme: intra vector has " + std::to_string(c6_intra.size()) +
                              " entries, expected " + std::to_string(k));
        if (static_cast<int>(c6_inter.size()) != k)
            throw ConfigError("level scheme: inter matrix must be k x k");
        for (int i = 0; i < k; ++i) {
            if (static_cast<int>(c6_inter[i].size()) != k)
                throw ConfigError("level scheme: inter matrix must be k x k");
            if (!std::isfinite(c6_intra[i])) throw ConfigError("level scheme: non-finite C6");
            for (int j = 0; j < k; ++j) {
                if (i == j) continue;
                if (!std::isfinite(c6_inter[i][j])) throw ConfigError("level scheme: non-finite C6");
                if (c6_inter[i][j] != c6_inter[j][i])
                    throw ConfigError("level scheme: inter matrix is not symmetric");
            }
        }
        if (!labels.empty() && static_cast<int>(labels.size()) != k)
            throw ConfigError("level scheme: labels must have k entries");
    }

    // Soft checks: sign conventions and |C6^(ij)| < min(C6^(i), C6^(j)).
    std::vector<std::string> warnings() const {
        std::vector<std::string> out;
        for (int i = 1; i <= k; ++i) {
            if (!(c6(i, i) > 0))
                out.push_back("C6^(" + std::to_string(i) + ") is not positive");
            for (int j = i + 1; j <= k; ++j) {
                const double v = c6(i, j);
                const std::string tag = "C6^(" + std::to_string(i) + std::to_string(j) + ")";
                if (!(v < 0)) out.push_back(tag + " is not negative");
                if (!(std::abs(v) < std::min(c6(i, i), c6(j, j))))
                    out.push_back("|" + tag + "| is not below min(C6^(" + std::to_string(i) + "), C6^(" +
                                  std::to_string(j) + "))");
            }
        }
        return out;
    }

    // First m levels of this scheme.
    LevelScheme truncated(int m) const {
        if (m < 1 || m > k) throw ConfigError("level scheme: cannot take " + std::to_string(m) + " of " +
                                              std::to_string(k) + " levels");
        LevelScheme out;
        out.name = name;
        out.k = m;
        out.c6_intra.assign(c6_intra.begin(), c6_intra.begin() + m);
        out.c6_inter.resize(m);
        for (int i = 0; i < m; ++i) out.c6_inter[i].assign(c6_inter[i].begin(), c6_inter[i].begin() + m);
        if (!labels.empty()) out.labels.assign(labels.begin(), labels.begin() + m);
        return out;
    }
};

inline LevelScheme make_level_scheme(std::string name, std::vector<double> intra,
                                     const std::vector<std::pair<std::pair<int, int>, double>>& inter,
                                     std::vector<std::string> labels = {}) {
    LevelScheme s;
    s.name = std::move(name);
    s.k = static_cast<int>(intra.size());
    s.c6_intra = std::move(intra);
    s.c6_inter.assign(s.k, std::vector<double>(s.k, 0.0));
    for (const auto& [ij, v] : inter) {
        const auto [i, j] = ij;
        if (i < 1 || j < 1 || i > s.k || j > s.k || i == j)
            throw ConfigError("level scheme: bad inter-level pair");
        s.c6_inter[i - 1][j - 1] = s.c6_inter[j - 1][i - 1] = v;
    }
    s.labels = std::move(labels);
    s.validate();
    return s;
}

inline std::vector<std::string> level_scheme_preset_names() { return {"rb-65-70-75", "rb-60-65-75"}; }

// Named C6 tables. k = 2 keeps the first two levels.
inline LevelScheme level_scheme_preset(std::string_view name, int k = 3) {
    LevelScheme full;
    if (name == "rb-65-70-75") {
        full = make_level_scheme("rb-65-70-75", {361.0, 862.7, 1984.5},
                                 {{{1, 2}, -94.1}, {{1, 3}, -35.0}, {{2, 3}, -226.7}},
                                 {"65S", "70S", "75S"});
    } else if (name == "rb-60-65-75") {
        full = make_level_scheme("rb-60-65-75", {138.9, 360.7, 1948.4},
                                 {{{1, 2}, -28.5}, {{1, 3}, -8.0}, {{2, 3}, -34.9}},
                                 {"60S", "65S", "75S"});
    } else {
        throw ConfigError("unknown level-scheme preset '" + std::string(name) + "'");
    }
    return full.truncated(k);
}

// Frequencies in MHz (value of X/2pi), times in us.
struct DrivePlan {
    std::vector<double> omega_max;
    std::vector<double> delta_max;
    double t_i = 0.4;
    double t_f = 8.0;
    double T = 8.4;
    int trotter_steps = 300;

    int k() const { return static_cast<int>(omega_max.size()); }

    void validate(int levels_k) const {
        if (static_cast<int>(omega_max.size()) != levels_k || static_cast<int>(delta_max.size()) != levels_k)
            throw ConfigError("drive: omega_max and delta_max need " + std::to_string(levels_k) + " entries");
        if (!(0.0 < t_i && t_i < t_f && t_f < T))
            throw ConfigError("drive: schedule requires 0 < t_i < t_f < T");
        if (trotter_steps < 1) throw ConfigError("drive: trotter_steps must be >= 1");
        for (double w : omega_max)
            if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("drive: omega_max entries must be >= 0");
        for (double d : delta_max)
            if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("drive: delta_max entries must be > 0");
    }
};

// C6 / r^6 in MHz for c6 in GHz um^6 and r in um.
inline double vdw_shift(double c6, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("vdw_shift: r must be positive");
    const double r2 = r * r;
    return c6 * 1000.0 / (r2 * r2 * r2);
}

inline double blockade_radius(double c6, double omega_eff) {
    if (!(omega_eff > 0.0)) throw std::invalid_argument("blockade_radius: omega must be positive");
    return std::pow(std::abs(c6) * 1000.0 / omega_eff, 1.0 / 6.0);
}

inline double inter_blockade_radius(const LevelScheme& levels, int i, int j, const std::vector<double>& omega) {
    return blockade_radius(levels.c6(i, j), 0.5 * (omega.at(i - 1) + omega.at(j - 1)));
}

struct SpacingWindow {
    double a_min = 0.0;
    double a_max = 0.0;
    bool empty() const { return !(a_min < a_max); }
};

inline SpacingWindow spacing_window(const LevelScheme& levels, const std::vector<double>& omega) {
    if (levels.k < 2) throw std::invalid_argument("spacing_window: needs at least two Rydberg levels");
    if (static_cast<int>(omega.size()) != levels.k)
        throw std::invalid_argument("spacing_window: omega must have k entries");
    SpacingWindow w;
    for (int i = 1; i <= levels.k; ++i)
        for (int j = i + 1; j <= levels.k; ++j) w.a_min = std::max(w.a_min, inter_blockade_radius(levels, i, j, omega));
    w.a_max = 0.8 * blockade_radius(levels.c6(1, 1), omega[0]);
    return w;
}

// ---------------------------------------------------------------------------
// Encoding constraint.

struct InteractionShell {
    double distance = 0.0;
    int edge_count = 0;
    std::vector<std::vector<double>> v;  // v[i][j] for levels 1..k, zero-based storage
};

struct LevelWindow {
    int level = 0;  // 1-based
    int shell = 0;  // index into EncodingReport::shells
    double lower = 0.0;
    double upper_alpha = 0.0;
    double upper_config = 0.0;
    double delta = 0.0;
    bool lower_ok = false;
    bool upper_alpha_ok = false;
    bool upper_config_ok = false;
};

struct EncodingReport {
    int alpha = 0;
    std::vector<InteractionShell> shells;
    std::vector<LevelWindow> windows;
    SpacingWindow spacing;
    bool spacing_applicable = false;
    bool spacing_ok = false;
    bool pass = false;
    std::vector<std::string> warnings;

    const LevelWindow& window(int level, int shell) const {
        for (const auto& w : windows)
            if (w.level == level && w.shell == shell) return w;
        throw std::out_of_range("EncodingReport: no window for that level/shell");
    }
};

inline constexpr double kShellTolerance = 1e-6;  // um

namespace detail {

// Most negative sum of V^(i, label_w)(r_uw) over labelings of the other
// neighbours w of u: labels != i, ground contributes 0, adjacent w differ.
inline double best_neighbour_shift(const ProblemGraph& g, const LevelScheme& levels, int u, int v, int i) {
    std::vector<int> others;
    for (int w : g.neighbors(u))
        if (w != v) others.push_back(w);
    std::vector<int> label(others.size(), 0);
    double best = 0.0;
    std::function<void(std::size_t, double)> rec = [&](std::size_t idx, double acc) {
        if (idx == others.size()) {
            best = std::min(best, acc);
            return;
        }
        const int w = others[idx];
        const double r = pair_distance(g, u, w);
        for (int lab = 0; lab <= levels.k; ++lab) {
            if (lab == i) continue;
            bool clash = false;
            for (std::size_t p = 0; p < idx && !clash; ++p)
                if (lab != 0 && label[p] == lab && g.adjacent(others[p], w)) clash = true;
            if (clash) continue;
            label[idx] = lab;
            rec(idx + 1, acc + (lab == 0 ? 0.0 : vdw_shift(levels.c6(i, lab), r)));
        }
        label[idx] = 0;
    };
    rec(0, 0.0);
    return best;
}

}  // namespace detail

inline EncodingReport validate_encoding(const ProblemGraph& g, const LevelScheme& levels, const DrivePlan& plan) {
    levels.validate();
    plan.validate(levels.k);
    const int k = levels.k;

    EncodingReport rep;
    rep.alpha = g.max_degree();
    rep.warnings = levels.warnings();

    std::vector<int> edge_shell;
    for (const auto& [u, v] : g.edges()) {
        const double r = pair_distance(g, u, v);
        int found = -1;
        for (std::size_t s = 0; s < rep.shells.size(); ++s)
            if (std::abs(rep.shells[s].distance - r) <= kShellTolerance) found = static_cast<int>(s);
        if (found < 0) {
            InteractionShell sh;
            sh.distance = r;
            sh.v.assign(k, std::vector<double>(k, 0.0));
            for (int i = 1; i <= k; ++i)
                for (int j = 1; j <= k; ++j) sh.v[i - 1][j - 1] = vdw_shift(levels.c6(i, j), r);
            rep.shells.push_back(sh);
            found = static_cast<int>(rep.shells.size()) - 1;
        }
        rep.shells[found].edge_count++;
        edge_shell.push_back(found);
    }
    std::vector<std::size_t> order(rep.shells.size());
    for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rep.shells[a].distance < rep.shells[b].distance; });
    std::vector<InteractionShell> sorted;
    std::vector<int> remap(order.size());
    for (std::size_t s = 0; s < order.size(); ++s) {
        remap[order[s]] = static_cast<int>(s);
        sorted.push_back(rep.shells[order[s]]);
    }
    rep.shells = std::move(sorted);
    for (int& s : edge_shell) s = remap[s];

    bool all_ok = true;
    for (std::size_t s = 0; s < rep.shells.size(); ++s) {
        const auto& sh = rep.shells[s];
        for (int i = 1; i <= k; ++i) {
            LevelWindow w;
            w.level = i;
            w.shell = static_cast<int>(s);
            w.delta = plan.delta_max[i - 1];
            double most_negative = 0.0;
            for (int j = 1; j <= k; ++j) {
                if (j == i) continue;
                w.lower = std::max(w.lower, std::abs(sh.v[i - 1][j - 1]));
                most_negative = std::min(most_negative, sh.v[i - 1][j - 1]);
            }
            w.upper_alpha = std::abs(sh.v[i - 1][i - 1] + (rep.alpha - 1) * most_negative);

            double upper = std::numeric_limits<double>::infinity();
            for (std::size_t e = 0; e < g.edges().size(); ++e) {
                if (edge_shell[e] != static_cast<int>(s)) continue;
                const auto [a, b] = g.edges()[e];
                const double vi = vdw_shift(levels.c6(i, i), pair_distance(g, a, b));
                upper = std::min(upper, vi + detail::best_neighbour_shift(g, levels, a, b, i));
                upper = std::min(upper, vi + detail::best_neighbour_shift(g, levels, b, a, i));
            }
            w.upper_config = upper;

            w.lower_ok = w.delta > w.lower;
            w.upper_alpha_ok = w.delta < w.upper_alpha;
            w.upper_config_ok = w.delta < w.upper_config;
            all_ok = all_ok && w.lower_ok && w.upper_config_ok;
            rep.windows.push_back(w);
        }
    }

    const bool driven = std::all_of(plan.omega_max.begin(), plan.omega_max.end(), [](double w) { return w > 0; });
    if (k >= 2 && driven) {
        rep.spacing_applicable = true;
        rep.spacing = spacing_window(levels, plan.omega_max);
        const double a = g.spacing();
        rep.spacing_ok = !rep.spacing.empty() && a > rep.spacing.a_min && a < rep.spacing.a_max;
    }
    rep.pass = all_ok;
    return rep;
}

// Per-level (lower, upper) windows on the nearest-neighbour shell of the
// 3-fan at spacing a.
inline std::vector<std::pair<double, double>> detuning_window_3fan(const LevelScheme& levels, double a) {
    const auto g = builtin_graph_at("D", a);
    DrivePlan plan;
    plan.omega_max.assign(levels.k, 1.0);
    plan.delta_max.assign(levels.k, 1.0);
    const auto rep = validate_encoding(g, levels, plan);
    std::vector<std::pair<double, double>> out;
    for (int i = 1; i <= levels.k; ++i) {
        const auto& w = rep.window(i, 0);
        out.emplace_back(w.lower, w.upper_config);
    }
    return out;
}

// Detuning bounds that hold for every nearest-neighbour spacing in
// [a_lo, a_hi]: the lower bound is the largest |V^(ij)| (at a_lo) and the
// upper bound the smallest V^(i) (at a_hi).
inline std::vector<std::pair<double, double>> detuning_bounds_over_spacings(const LevelScheme& levels, double a_lo,
                                                                            double a_hi) {
    if (!(0.0 < a_lo && a_lo <= a_hi)) throw std::invalid_argument("detuning_bounds_over_spacings: bad range");
    std::vector<std::pair<double, double>> out;
    for (int i = 1; i <= levels.k; ++i) {
        double lower = 0.0;
        for (int j = 1; j <= levels.k; ++j)
            if (j != i) lower = std::max(lower, std::abs(vdw_shift(levels.c6(i, j), a_lo)));
        out.emplace_back(lower, vdw_shift(levels.c6(i, i), a_hi));
    }
    return out;
}

}  // namespace quditcolor
