#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "quditcolor/basis.hpp"
#include "quditcolor/classical.hpp"
#include "quditcolor/graph.hpp"
#include "quditcolor/hamiltonian.hpp"
#include "quditcolor/interactions.hpp"

namespace quditcolor {

struct BasisWeight {
    std::size_t index = 0;
    double probability = 0.0;
};

// Entries with probability >= threshold, largest first (ties by index).
inline std::vector<BasisWeight> decompose(const StateVector& psi, double threshold) {
    if (!(threshold >= 0.0 && threshold < 1.0)) throw std::invalid_argument("decompose: threshold must be in [0, 1)");
    std::vector<BasisWeight> out;
    for (Eigen::Index s = 0; s < psi.size(); ++s) {
        const double p = std::norm(psi[s]);
        if (p >= threshold) out.push_back({static_cast<std::size_t>(s), p});
    }
    std::sort(out.begin(), out.end(), [](const BasisWeight& a, const BasisWeight& b) {
        return a.probability != b.probability ? a.probability > b.probability : a.index < b.index;
    });
    return out;
}

inline std::vector<bool> valid_mask(const ProblemGraph& g, int k) {
    const Basis basis(g.size(), k);
    std::vector<bool> mask(basis.dim());
    for (std::size_t s = 0; s < basis.dim(); ++s) mask[s] = is_valid_coloring(basis.decode(s), g);
    return mask;
}

struct DegeneracyClass {
    std::size_t representative = 0;  // smallest member index
    std::vector<std::size_t> members;
    bool valid = false;
    double energy = 0.0;  // final diagonal energy, MHz
    int orbits = 0;       // automorphism orbits merged into this class
    std::string symmetry; // "aut" or "aut x labels"
};

struct ClassOptions {
    bool include_invalid = false;
    double tol = 1e-3;  // MHz
    InteractionOptions interactions;
};

namespace detail {
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};
}  // namespace detail

// Orbits of colorings under the geometric automorphism group, merged across
// label permutations only when the final diagonal energies coincide.
// Sorted by energy, then representative.
inline std::vector<DegeneracyClass> degeneracy_classes(const ProblemGraph& g, const LevelScheme& levels,
                                                       const std::vector<double>& delta_final,
                                                       const ClassOptions& opts = {}) {
    const Basis basis(g.size(), levels.k);
    const auto group = automorphisms(g);
    const auto energy = build_diagonal(g, levels, delta_final, opts.interactions);
    const auto mask = valid_mask(g, levels.k);
    const std::size_t dim = basis.dim();

    std::vector<int> orbit_of(dim, -1);
    std::vector<std::vector<std::size_t>> orbits;
    for (std::size_t s = 0; s < dim; ++s) {
        if (orbit_of[s] >= 0 || (!mask[s] && !opts.include_invalid)) continue;
        const int id = static_cast<int>(orbits.size());
        std::vector<std::size_t> members;
        for (const auto& perm : group.permutations) {
            const std::size_t t = basis.permute(s, perm);
            if (orbit_of[t] < 0) {
                orbit_of[t] = id;
                members.push_back(t);
            }
        }
        std::sort(members.begin(), members.end());
        orbits.push_back(std::move(members));
    }

    const int d = basis.levels();
    std::vector<int> sigma(d);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<std::vector<int>> label_perms;
    do {
        label_perms.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    detail::UnionFind uf(static_cast<int>(orbits.size()));
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        const std::size_t s = orbits[o].front();
        auto digits = basis.decode(s);
        for (const auto& lp : label_perms) {
            std::vector<int> mapped(digits.size());
            for (std::size_t v = 0; v < digits.size(); ++v) mapped[v] = lp[digits[v]];
            const std::size_t t = basis.encode(mapped);
            const int other = orbit_of[t];
            if (other < 0) continue;
            if (std::abs(energy[t] - energy[s]) <= opts.tol) uf.unite(static_cast<int>(o), other);
        }
    }

    std::vector<int> class_of_root(orbits.size(), -1);
    std::vector<DegeneracyClass> classes;
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        const int root = uf.find(static_cast<int>(o));
        if (class_of_root[root] < 0) {
            class_of_root[root] = static_cast<int>(classes.size());
            classes.emplace_back();
        }
        auto& c = classes[class_of_root[root]];
        c.members.insert(c.members.end(), orbits[o].begin(), orbits[o].end());
        c.orbits++;
    }
    for (auto& c : classes) {
        std::sort(c.members.begin(), c.members.end());
        c.representative = c.members.front();
        c.valid = mask[c.representative];
        c.energy = energy[c.representative];
        for (std::size_t s : c.members) c.energy = std::min(c.energy, energy[s]);
        c.symmetry = c.orbits > 1 ? "aut x labels" : "aut";
    }
    std::sort(classes.begin(), classes.end(), [&](const DegeneracyClass& a, const DegeneracyClass& b) {
        if (std::abs(a.energy - b.energy) > opts.tol) return a.energy < b.energy;
        return a.representative < b.representative;
    });
    return classes;
}

struct ClassFidelity {
    std::vector<double> per_class;
    double valid_total = 0.0;    // every valid basis state, in a class or not
    double invalid_total = 0.0;
    int dominant = -1;           // index of the largest class
};

inline ClassFidelity fidelity_by_class(const StateVector& psi, const std::vector<DegeneracyClass>& classes,
                                       const std::vector<bool>& mask) {
    if (static_cast<std::size_t>(psi.size()) != mask.size())
        throw std::invalid_argument("fidelity_by_class: state and mask sizes differ");
    ClassFidelity f;
    for (const auto& c : classes) {
        double w = 0.0;
        for (std::size_t s : c.members) w += std::norm(psi[static_cast<Eigen::Index>(s)]);
        f.per_class.push_back(w);
    }
    for (std::size_t s = 0; s < mask.size(); ++s)
        (mask[s] ? f.valid_total : f.invalid_total) += std::norm(psi[static_cast<Eigen::Index>(s)]);
    if (!f.per_class.empty())
        f.dominant = static_cast<int>(std::max_element(f.per_class.begin(), f.per_class.end()) - f.per_class.begin());
    return f;
}

struct ColorClassInfo {
    int label = 0;
    std::vector<int> vertices;
    bool independent = false;
    bool maximal = false;
    bool maximum = false;
};

inline std::vector<ColorClassInfo> mis_analysis(const Coloring& c, const ProblemGraph& g) {
    if (static_cast<int>(c.size()) != g.size()) throw std::invalid_argument("mis_analysis: coloring size mismatch");
    const std::size_t mis = maximum_independent_set(g).size();
    std::vector<int> labels(c.begin(), c.end());
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::vector<ColorClassInfo> out;
    for (int label : labels) {
        ColorClassInfo info;
        info.label = label;
        for (int v = 0; v < g.size(); ++v)
            if (c[v] == label) info.vertices.push_back(v);
        info.independent = true;
        for (std::size_t a = 0; a < info.vertices.size(); ++a)
            for (std::size_t b = a + 1; b < info.vertices.size(); ++b)
                if (g.adjacent(info.vertices[a], info.vertices[b])) info.independent = false;
        info.maximal = info.independent;
        for (int w = 0; w < g.size() && info.maximal; ++w) {
            if (c[w] == label) continue;
            bool blocked = false;
            for (int v : info.vertices) blocked = blocked || g.adjacent(v, w);
            if (!blocked) info.maximal = false;
        }
        info.maximum = info.independent && info.vertices.size() == mis;
        out.push_back(std::move(info));
    }
    return out;
}

}  // namespace quditcolor
