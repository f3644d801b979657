#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "quditcolor/analysis.hpp"
#include "quditcolor/presets.hpp"

using namespace quditcolor;

TEST(Decompose, ThresholdAndOrder) {
    StateVector psi(4);
    psi << std::sqrt(0.25), std::sqrt(0.5), std::sqrt(0.25) * cplx(0, 1), std::sqrt(1e-4);
    const auto out = decompose(psi, 1e-3);
    ASSERT_EQ(out.size(), 3u);
    EXPECT_EQ(out[0].index, 1u);
    EXPECT_EQ(out[1].index, 0u);
    EXPECT_EQ(out[2].index, 2u);
    EXPECT_NEAR(out[0].probability, 0.5, 1e-15);
    EXPECT_EQ(decompose(psi, 0.0).size(), 4u);
    EXPECT_THROW(decompose(psi, 1.0), std::invalid_argument);
    EXPECT_THROW(decompose(psi, -0.1), std::invalid_argument);
}

TEST(ValidMask, ChromaticPolynomialCounts) {
    // P(K3, q) = q(q-1)(q-2), P(C4, q) = (q-1)^4 + (q-1)
    auto count = [](const std::vector<bool>& m) { return std::count(m.begin(), m.end(), true); };
    const auto tri = builtin_graph("A", Optimizer::TwoRydberg);
    EXPECT_EQ(count(valid_mask(tri, 2)), 6);
    EXPECT_EQ(count(valid_mask(tri, 3)), 24);
    const auto sq = builtin_graph("B", Optimizer::TwoRydberg);
    EXPECT_EQ(count(valid_mask(sq, 2)), 18);
    EXPECT_EQ(count(valid_mask(sq, 3)), 84);
}

TEST(Classes, PartitionWithInvalid) {
    const auto& p = find_preset("fig4-diamond-2ryd");
    ClassOptions o;
    o.include_invalid = true;
    const auto cls = degeneracy_classes(p.problem_graph(), p.level_scheme(), p.delta_max, o);
    const Basis b(4, 2);
    std::vector<int> seen(b.dim(), 0);
    for (const auto& c : cls)
        for (std::size_t s : c.members) seen[s]++;
    for (int x : seen) EXPECT_EQ(x, 1);
    for (std::size_t i = 1; i < cls.size(); ++i) EXPECT_LE(cls[i - 1].energy, cls[i].energy + o.tol);
}

TEST(Classes, MembersShareEnergyAndValidity) {
    for (const char* name : {"fig4-diamond-2ryd", "fig5-trilattice-2ryd", "fig6-tetrahedron"}) {
        const auto& p = find_preset(name);
        const auto g = p.problem_graph();
        const auto s = p.level_scheme();
        ClassOptions o;
        o.include_invalid = true;
        const auto cls = degeneracy_classes(g, s, p.delta_max, o);
        const auto e = build_diagonal(g, s, p.delta_max);
        const auto mask = valid_mask(g, s.k);
        for (const auto& c : cls) {
            EXPECT_EQ(c.representative, c.members.front());
            for (std::size_t m : c.members) {
                EXPECT_NEAR(e[m], c.energy, 2 * o.tol) << name;
                EXPECT_EQ(mask[m], c.valid) << name;
            }
        }
    }
}

TEST(Classes, ValidOnlyDefault) {
    const auto& p = find_preset("fig4-triangle-2ryd");
    const auto cls = degeneracy_classes(p.problem_graph(), p.level_scheme(), p.delta_max);
    std::size_t total = 0;
    for (const auto& c : cls) {
        EXPECT_TRUE(c.valid);
        total += c.members.size();
    }
    EXPECT_EQ(total, 6u);
    // All six 0/1/2 colorings of the triangle are one symmetry class.
    ASSERT_EQ(cls.size(), 1u);
    EXPECT_EQ(cls[0].orbits, 1);
}

TEST(Classes, TrilatticeOptimalClassHasSixMembers) {
    const auto& p = find_preset("fig5-trilattice-2ryd");
    const auto cls = degeneracy_classes(p.problem_graph(), p.level_scheme(), p.delta_max);
    ASSERT_FALSE(cls.empty());
    EXPECT_EQ(cls[0].members.size(), 6u);
}

TEST(Classes, TetrahedronGroundClassIsFull) {
    const auto& p = find_preset("fig6-tetrahedron");
    const auto cls = degeneracy_classes(p.problem_graph(), p.level_scheme(), p.delta_max);
    ASSERT_FALSE(cls.empty());
    EXPECT_EQ(cls[0].members.size(), 24u);
    EXPECT_EQ(cls[0].symmetry, "aut");
}

TEST(Classes, LabelMergingRequiresEqualEnergy) {
    // Square with 2 Rydberg levels: 0101 and 1010 are one orbit; 0202 has a
    // different energy and stays apart, 1212 has yet another.
    const auto& p = find_preset("fig4-square-2ryd");
    const auto cls = degeneracy_classes(p.problem_graph(), p.level_scheme(), p.delta_max);
    const Basis b(4, 2);
    auto class_of = [&](const std::string& label) {
        const std::size_t s = b.parse_label(label);
        for (std::size_t i = 0; i < cls.size(); ++i)
            if (std::find(cls[i].members.begin(), cls[i].members.end(), s) != cls[i].members.end()) return int(i);
        return -1;
    };
    EXPECT_EQ(class_of("0101"), class_of("1010"));
    EXPECT_NE(class_of("0101"), class_of("0202"));
    EXPECT_NE(class_of("1212"), class_of("0202"));
}

TEST(Fidelity, SumsAndDominant) {
    const auto& p = find_preset("fig4-square-2ryd");
    const auto g = p.problem_graph();
    const auto s = p.level_scheme();
    ClassOptions o;
    o.include_invalid = true;
    const auto cls = degeneracy_classes(g, s, p.delta_max, o);
    const auto mask = valid_mask(g, s.k);
    const Basis b(4, 2);
    StateVector psi = StateVector::Zero(b.dim());
    psi[b.parse_label("1212")] = std::sqrt(0.6);
    psi[b.parse_label("1100")] = std::sqrt(0.4);
    const auto f = fidelity_by_class(psi, cls, mask);
    EXPECT_NEAR(f.valid_total, 0.6, 1e-12);
    EXPECT_NEAR(f.invalid_total, 0.4, 1e-12);
    EXPECT_NEAR(std::accumulate(f.per_class.begin(), f.per_class.end(), 0.0), 1.0, 1e-12);
    ASSERT_GE(f.dominant, 0);
    EXPECT_TRUE(cls[f.dominant].valid);
    EXPECT_THROW(fidelity_by_class(StateVector::Zero(3), cls, mask), std::invalid_argument);
}

TEST(Mis, SquareAlternating) {
    const auto g = builtin_graph("B", Optimizer::TwoRydberg);
    const auto info = mis_analysis({0, 1, 0, 1}, g);
    ASSERT_EQ(info.size(), 2u);
    for (const auto& c : info) {
        EXPECT_TRUE(c.independent);
        EXPECT_TRUE(c.maximal);
        EXPECT_TRUE(c.maximum);
    }
}

TEST(Mis, NonMaximalClassDetected) {
    // Trilattice: a color class of one vertex next to a free vertex is not maximal.
    const auto g = builtin_graph("E", Optimizer::TwoRydberg);
    Coloring c(6, 0);
    c[0] = 1;
    const auto info = mis_analysis(c, g);
    ASSERT_EQ(info.size(), 2u);
    EXPECT_FALSE(info[0].independent);
    EXPECT_TRUE(info[1].independent);
    EXPECT_FALSE(info[1].maximal);
    EXPECT_THROW(mis_analysis({0, 1}, g), std::invalid_argument);
}
