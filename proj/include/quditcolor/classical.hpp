#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "quditcolor/basis.hpp"
#include "quditcolor/errors.hpp"
#include "quditcolor/graph.hpp"
#include "quditcolor/hamiltonian.hpp"
#include "quditcolor/interactions.hpp"

namespace quditcolor {

// Label per vertex; 0 is a color like any other.
using Coloring = std::vector<int>;

inline bool is_valid_coloring(const Coloring& c, const ProblemGraph& g) {
    if (static_cast<int>(c.size()) != g.size()) return false;
    for (const auto& [u, v] : g.edges())
        if (c[u] == c[v]) return false;
    return true;
}

inline int count_labels(const Coloring& c) {
    std::vector<int> seen(c.begin(), c.end());
    std::sort(seen.begin(), seen.end());
    return static_cast<int>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

struct ChromaticResult {
    int chi = 0;
    Coloring witness;
    std::uint64_t optimal_count = 0;
};

inline constexpr std::uint64_t kMaxEnumeration = 100'000'000;

inline ChromaticResult chromatic_bruteforce(const ProblemGraph& g) {
    const int n = g.size();
    for (int k = 1; k <= n; ++k) {
        double total = std::pow(static_cast<double>(k), n);
        if (total > static_cast<double>(kMaxEnumeration))
            throw DimensionError("chromatic_bruteforce: " + std::to_string(k) + "^" + std::to_string(n) +
                                 " colorings exceed the enumeration bound");
        ChromaticResult res;
        Coloring c(n, 0);
        const auto count = static_cast<std::uint64_t>(total);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            if (is_valid_coloring(c, g)) {
                if (res.optimal_count == 0) res.witness = c;
                ++res.optimal_count;
            }
            for (int v = 0; v < n; ++v) {
                if (++c[v] < k) break;
                c[v] = 0;
            }
        }
        if (res.optimal_count > 0) {
            res.chi = k;
            return res;
        }
    }
    throw std::logic_error("chromatic_bruteforce: no coloring found");
}

struct HeuristicResult {
    Coloring coloring;
    int colors = 0;
};

namespace detail {
inline int first_free_color(const ProblemGraph& g, const Coloring& c, int v) {
    std::vector<bool> used(g.size() + 1, false);
    for (int w : g.neighbors(v))
        if (c[w] >= 0) used[c[w]] = true;
    int col = 0;
    while (used[col]) ++col;
    return col;
}

inline HeuristicResult finish(Coloring c) {
    HeuristicResult r;
    r.colors = c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
    r.coloring = std::move(c);
    return r;
}
}  // namespace detail

// Saturation first; ties by higher degree, then lower id.
inline HeuristicResult dsatur(const ProblemGraph& g) {
    const int n = g.size();
    Coloring c(n, -1);
    for (int step = 0; step < n; ++step) {
        int best = -1, best_sat = -1, best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (c[v] >= 0) continue;
            std::vector<int> seen;
            for (int w : g.neighbors(v))
                if (c[w] >= 0) seen.push_back(c[w]);
            std::sort(seen.begin(), seen.end());
            const int sat = static_cast<int>(std::unique(seen.begin(), seen.end()) - seen.begin());
            const int deg = g.degree(v);
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        c[best] = detail::first_free_color(g, c, best);
    }
    return detail::finish(std::move(c));
}

// Degree descending (ties by id), first fit.
inline HeuristicResult welsh_powell(const ProblemGraph& g) {
    const int n = g.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
    Coloring c(n, -1);
    for (int v : order) c[v] = detail::first_free_color(g, c, v);
    return detail::finish(std::move(c));
}

inline constexpr int kMaxSubsetVertices = 24;

// Largest independent set within `allowed` (bitmask over vertices); among
// equal sizes the lexicographically smallest sorted vertex list wins.
inline std::vector<int> maximum_independent_set(const ProblemGraph& g, std::uint32_t allowed) {
    const int n = g.size();
    if (n > kMaxSubsetVertices) throw DimensionError("maximum_independent_set: too many vertices");
    std::vector<std::uint32_t> nbr(n, 0);
    for (const auto& [u, v] : g.edges()) {
        nbr[u] |= 1u << v;
        nbr[v] |= 1u << u;
    }
    auto to_list = [n](std::uint32_t m) {
        std::vector<int> out;
        for (int v = 0; v < n; ++v)
            if (m >> v & 1u) out.push_back(v);
        return out;
    };
    std::vector<int> best;
    bool have = false;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        if ((m & ~allowed) != 0) continue;
        bool indep = true;
        for (int v = 0; v < n && indep; ++v)
            if ((m >> v & 1u) && (nbr[v] & m)) indep = false;
        if (!indep) continue;
        auto list = to_list(m);
        if (!have || list.size() > best.size() || (list.size() == best.size() && list < best)) {
            best = std::move(list);
            have = true;
        }
    }
    return best;
}

inline std::vector<int> maximum_independent_set(const ProblemGraph& g) {
    return maximum_independent_set(g, g.size() >= 32 ? ~0u : ((1u << g.size()) - 1u));
}

// Repeatedly strip an exact maximum independent set and give it a color.
inline HeuristicResult rlf_mis_first(const ProblemGraph& g) {
    const int n = g.size();
    Coloring c(n, -1);
    std::uint32_t remaining = (1u << n) - 1u;
    int color = 0;
    while (remaining != 0) {
        for (int v : maximum_independent_set(g, remaining)) {
            c[v] = color;
            remaining &= ~(1u << v);
        }
        ++color;
    }
    return detail::finish(std::move(c));
}

// -A per Rydberg-labelled vertex, +B per edge with equal Rydberg labels.
inline double potts_energy(const Coloring& c, const ProblemGraph& g, double a, double b) {
    double e = 0.0;
    for (int label : c)
        if (label > 0) e -= a;
    for (const auto& [u, v] : g.edges())
        if (c[u] > 0 && c[u] == c[v]) e += b;
    return e;
}

// x[v][i] in {0,1}.
inline double qubo_energy(const std::vector<std::vector<int>>& x, const ProblemGraph& g) {
    if (static_cast<int>(x.size()) != g.size()) throw std::invalid_argument("qubo_energy: need one row per vertex");
    double e = 0.0;
    for (const auto& row : x) {
        int s = 0;
        for (int b : row) s += b;
        e += static_cast<double>((1 - s) * (1 - s));
    }
    for (const auto& [u, v] : g.edges())
        for (std::size_t i = 0; i < x[u].size(); ++i) e += x[u][i] * x[v][i];
    return e;
}

// One-hot rows for labels 1..k; ground maps to the all-zero row.
inline std::vector<std::vector<int>> one_hot(const Coloring& c, int k) {
    std::vector<std::vector<int>> x(c.size(), std::vector<int>(k, 0));
    for (std::size_t v = 0; v < c.size(); ++v)
        if (c[v] > 0) x[v][c[v] - 1] = 1;
    return x;
}

// Argmin of the final diagonal Hamiltonian, within tol (MHz).
inline std::vector<std::size_t> final_ground_states(const ProblemGraph& g, const LevelScheme& levels,
                                                    const std::vector<double>& delta_final, double tol = 1e-3,
                                                    const InteractionOptions& opts = {}) {
    const auto e = build_diagonal(g, levels, delta_final, opts);
    const double lo = *std::min_element(e.begin(), e.end());
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < e.size(); ++s)
        if (e[s] <= lo + tol) out.push_back(s);
    return out;
}

}  // namespace quditcolor
