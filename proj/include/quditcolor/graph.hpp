#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quditcolor/errors.hpp"

namespace quditcolor {

// Atom position in micrometres.
struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double distance(const Position& a, const Position& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

using Edge = std::pair<int, int>;

enum class Optimizer { TwoRydberg, ThreeRydberg };

inline int level_count(Optimizer opt) { return opt == Optimizer::TwoRydberg ? 2 : 3; }

inline std::string_view to_string(Optimizer opt) {
    return opt == Optimizer::TwoRydberg ? "2-rydberg" : "3-rydberg";
}

inline Optimizer parse_optimizer(std::string_view s) {
    if (s == "2-rydberg" || s == "2" || s == "2-Rydberg" || s == "two") return Optimizer::TwoRydberg;
    if (s == "3-rydberg" || s == "3" || s == "3-Rydberg" || s == "three") return Optimizer::ThreeRydberg;
    throw ConfigError("unknown optimizer '" + std::string(s) + "' (expected 2-rydberg or 3-rydberg)");
}

// A unit-disk coloring instance: atoms at fixed positions plus the declared
// edge set. Immutable after construction. Vertex ids are 0-based; reports
// print them 1-based (v1, v2, ...).
class ProblemGraph {
public:
    ProblemGraph(std::string name, std::vector<Position> positions, std::vector<Edge> edges,
                 double spacing)
        : name_(std::move(name)), positions_(std::move(positions)), spacing_(spacing) {
        const int n = static_cast<int>(positions_.size());
        if (n == 0) throw ConfigError("graph '" + name_ + "' has no vertices");
        for (const auto& p : positions_) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
                throw ConfigError("graph '" + name_ + "' has a non-finite coordinate");
        }
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (!(distance(positions_[u], positions_[v]) > 0.0))
                    throw ConfigError("graph '" + name_ + "': vertices v" + std::to_string(u + 1) +
                                      " and v" + std::to_string(v + 1) + " coincide");
            }
        }
        adjacency_.assign(static_cast<std::size_t>(n) * n, false);
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw ConfigError("graph '" + name_ + "': edge endpoint out of range");
            if (u == v) throw ConfigError("graph '" + name_ + "': self-loop on v" + std::to_string(u + 1));
            if (u > v) std::swap(u, v);
            if (adjacency_[u * n + v]) continue;
            adjacency_[u * n + v] = adjacency_[v * n + u] = true;
            edges_.emplace_back(u, v);
        }
        std::sort(edges_.begin(), edges_.end());
    }

    const std::string& name() const { return name_; }
    int size() const { return static_cast<int>(positions_.size()); }
    const std::vector<Position>& positions() const { return positions_; }
    const Position& position(int v) const { return positions_.at(v); }
    const std::vector<Edge>& edges() const { return edges_; }
    double spacing() const { return spacing_; }

    bool adjacent(int u, int v) const { return adjacency_[static_cast<std::size_t>(u) * size() + v]; }

    int degree(int v) const {
        int d = 0;
        for (int w = 0; w < size(); ++w) d += adjacent(v, w) ? 1 : 0;
        return d;
    }

    int max_degree() const {
        int best = 0;
        for (int v = 0; v < size(); ++v) best = std::max(best, degree(v));
        return best;
    }

    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        for (int w = 0; w < size(); ++w)
            if (adjacent(v, w)) out.push_back(w);
        return out;
    }

private:
    std::string name_;
    std::vector<Position> positions_;
    std::vector<Edge> edges_;
    std::vector<bool> adjacency_;
    double spacing_;
};

inline double pair_distance(const ProblemGraph& g, int u, int v) {
    if (u < 0 || v < 0 || u >= g.size() || v >= g.size())
        throw std::out_of_range("pair_distance: vertex id out of range");
    if (u == v) throw std::invalid_argument("pair_distance: u and v must differ");
    return distance(g.position(u), g.position(v));
}

// All unordered pairs within `radius` (inclusive).
inline std::vector<Edge> unit_disk_edges(const std::vector<Position>& positions, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("unit_disk_edges: radius must be positive");
    std::vector<Edge> out;
    const int n = static_cast<int>(positions.size());
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (distance(positions[u], positions[v]) <= radius) out.emplace_back(u, v);
    return out;
}

// ---------------------------------------------------------------------------
// Built-in benchmark graphs A..J.

namespace detail {

struct BuiltinSpec {
    char label;
    std::string_view description;
    std::optional<double> spacing_2ryd;
    double spacing_3ryd;
    std::vector<Edge> edges_1based;
};

inline const std::vector<BuiltinSpec>& builtin_specs() {
    static const std::vector<BuiltinSpec> specs = {
        {'A', "equilateral triangle (C3)", 5.26, 6.33, {{1, 2}, {1, 3}, {2, 3}}},
        {'B', "square (C4)", 5.26, 6.41, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}},
        {'C', "diamond", 4.99, 6.75, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}}},
        {'D', "3-fan", 5.26, 6.75, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}}},
        {'E', "triangle-shape triangular lattice", 4.91, 6.75,
         {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}, {2, 6}, {4, 6}}},
        {'F', "ladder-shape triangular lattice", 5.26, 6.75,
         {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}, {4, 6}, {5, 6}}},
        {'G', "K4, triangle with centre", std::nullopt, 3.37, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}},
        {'H', "K4, square with diagonals", std::nullopt, 4.45, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}},
        {'I', "K4, regular tetrahedron (3D)", std::nullopt, 5.61,
         {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}},
        {'J', "wheel W6 (pentagon with hub)", std::nullopt, 4.10,
         {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 2}}},
    };
    return specs;
}

inline std::vector<Position> builtin_positions(char label, double a) {
    const double h = a * std::numbers::sqrt3 / 2.0;
    switch (label) {
        case 'A': return {{0, 0, 0}, {a / 2, h, 0}, {a, 0, 0}};
        case 'B':
        case 'H': return {{0, 0, 0}, {0, a, 0}, {a, a, 0}, {a, 0, 0}};
        case 'C': return {{0, 0, 0}, {a / 2, h, 0}, {a, 0, 0}, {a / 2, -h, 0}};
        case 'D': return {{0, 0, 0}, {a / 2, h, 0}, {a, 0, 0}, {1.5 * a, h, 0}, {2 * a, 0, 0}};
        case 'E': return {{-a, 0, 0}, {-a / 2, h, 0}, {0, 0, 0}, {a / 2, h, 0}, {a, 0, 0}, {0, 2 * h, 0}};
        case 'F': return {{-a, 0, 0}, {-a / 2, h, 0}, {0, 0, 0}, {a / 2, h, 0}, {a, 0, 0}, {1.5 * a, h, 0}};
        case 'G': return {{0, a, 0}, {h, -a / 2, 0}, {-h, -a / 2, 0}, {0, 0, 0}};
        case 'I': {
            // Tetrahedron from the cube corners, scaled so every edge has length a.
            const double s = a / std::numbers::sqrt2;
            return {{0, 0, 0}, {-s, 0, s}, {0, s, s}, {-s, s, 0}};
        }
        case 'J': {
            const double theta = 72.0 * std::numbers::pi / 180.0;
            std::vector<Position> p{{0, 0, 0}};
            for (int i = 1; i <= 5; ++i) p.push_back({a * std::sin(i * theta), a * std::cos(i * theta), 0});
            return p;
        }
        default: break;
    }
    throw ConfigError(std::string("unknown built-in graph '") + label + "'");
}

inline const BuiltinSpec& find_builtin(std::string_view name) {
    if (name.size() == 1) {
        const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
        for (const auto& s : builtin_specs())
            if (s.label == c) return s;
    }
    throw ConfigError("unknown built-in graph '" + std::string(name) + "' (expected A..J)");
}

}  // namespace detail

inline std::vector<std::string> builtin_graph_names() {
    std::vector<std::string> out;
    for (const auto& s : detail::builtin_specs()) out.emplace_back(1, s.label);
    return out;
}

inline std::string builtin_graph_description(std::string_view name) {
    return std::string(detail::find_builtin(name).description);
}

// Lattice spacing used for a built-in graph with the given optimizer, if any.
inline std::optional<double> builtin_spacing(std::string_view name, Optimizer opt) {
    const auto& spec = detail::find_builtin(name);
    if (opt == Optimizer::TwoRydberg) return spec.spacing_2ryd;
    return spec.spacing_3ryd;
}

// Built-in graph at an explicit spacing (used by spacing sweeps and tests).
inline ProblemGraph builtin_graph_at(std::string_view name, double spacing) {
    const auto& spec = detail::find_builtin(name);
    if (!(spacing > 0.0)) throw ConfigError("spacing must be positive");
    std::vector<Edge> edges;
    for (auto [u, v] : spec.edges_1based) edges.emplace_back(u - 1, v - 1);
    return ProblemGraph(std::string(1, spec.label), detail::builtin_positions(spec.label, spacing),
                        std::move(edges), spacing);
}

inline ProblemGraph builtin_graph(std::string_view name, Optimizer opt) {
    const auto spacing = builtin_spacing(name, opt);
    if (!spacing)
        throw ConfigError("graph " + std::string(name) + " has no " + std::string(to_string(opt)) +
                          " configuration");
    return builtin_graph_at(name, *spacing);
}

// ---------------------------------------------------------------------------
// Symmetry.

using Permutation = std::vector<int>;

struct AutomorphismGroup {
    std::vector<Permutation> permutations;

    std::size_t order() const { return permutations.size(); }
};

inline Permutation compose(const Permutation& outer, const Permutation& inner) {
    Permutation out(inner.size());
    for (std::size_t v = 0; v < inner.size(); ++v) out[v] = outer[inner[v]];
    return out;
}

inline constexpr int kMaxAutomorphismVertices = 10;
inline constexpr double kAutomorphismDistanceTol = 1e-6;  // um, absolute

// Vertex permutations that preserve the edge set and every pairwise
// distance. Distances matter because interaction tails enter the
// Hamiltonian between all pairs, not just edges.
inline AutomorphismGroup automorphisms(const ProblemGraph& g) {
    const int n = g.size();
    if (n > kMaxAutomorphismVertices)
        throw DimensionError("automorphisms: N = " + std::to_string(n) + " exceeds enumeration bound " +
                             std::to_string(kMaxAutomorphismVertices));
    std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) dist[u * n + v] = pair_distance(g, u, v);

    AutomorphismGroup group;
    Permutation perm(n, -1);
    std::vector<bool> used(n, false);
    std::function<void(int)> extend = [&](int v) {
        if (v == n) {
            group.permutations.push_back(perm);
            return;
        }
        for (int image = 0; image < n; ++image) {
            if (used[image]) continue;
            bool ok = true;
            for (int w = 0; w < v && ok; ++w) {
                if (g.adjacent(v, w) != g.adjacent(image, perm[w])) ok = false;
                else if (std::abs(dist[v * n + w] - dist[image * n + perm[w]]) > kAutomorphismDistanceTol)
                    ok = false;
            }
            if (!ok) continue;
            perm[v] = image;
            used[image] = true;
            extend(v + 1);
            used[image] = false;
            perm[v] = -1;
        }
    };
    extend(0);
    return group;
}

}  // namespace quditcolor
