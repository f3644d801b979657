#include <gtest/gtest.h>

#include <set>

#include "quditcolor/classical.hpp"
#include "quditcolor/presets.hpp"

using namespace quditcolor;

namespace {
const std::vector<std::string> kAll = {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J"};

ProblemGraph three(const std::string& name) { return builtin_graph(name, Optimizer::ThreeRydberg); }
}  // namespace

TEST(Chromatic, BuiltinNumbers) {
    const int chi[] = {3, 2, 3, 3, 3, 3, 4, 4, 4, 4};
    for (int i = 0; i < 10; ++i) {
        const auto g = three(kAll[i]);
        const auto r = chromatic_bruteforce(g);
        EXPECT_EQ(r.chi, chi[i]) << kAll[i];
        EXPECT_TRUE(is_valid_coloring(r.witness, g));
        EXPECT_EQ(count_labels(r.witness), chi[i]);
    }
}

TEST(Chromatic, OptimalCounts) {
    // Labelled proper colorings with exactly chi colors available.
    EXPECT_EQ(chromatic_bruteforce(three("A")).optimal_count, 6u);
    EXPECT_EQ(chromatic_bruteforce(three("B")).optimal_count, 2u);
    EXPECT_EQ(chromatic_bruteforce(three("C")).optimal_count, 6u);
    EXPECT_EQ(chromatic_bruteforce(three("I")).optimal_count, 24u);
    EXPECT_EQ(chromatic_bruteforce(three("E")).optimal_count, 6u);
}

TEST(Chromatic, EdgelessGraph) {
    const ProblemGraph g("dots", {{0, 0, 0}, {10, 0, 0}}, {}, 10.0);
    EXPECT_EQ(chromatic_bruteforce(g).chi, 1);
}

TEST(Heuristics, AlwaysValidAndBoundedBelowByChi) {
    for (const auto& name : kAll) {
        const auto g = three(name);
        const int chi = chromatic_bruteforce(g).chi;
        for (const auto& r : {dsatur(g), welsh_powell(g), rlf_mis_first(g)}) {
            EXPECT_TRUE(is_valid_coloring(r.coloring, g)) << name;
            EXPECT_GE(r.colors, chi) << name;
            EXPECT_EQ(r.colors, count_labels(r.coloring)) << name;
        }
    }
}

TEST(Heuristics, DsaturOptimalOnBuiltins) {
    for (const auto& name : kAll) {
        const auto g = three(name);
        EXPECT_EQ(dsatur(g).colors, chromatic_bruteforce(g).chi) << name;
    }
}

TEST(Heuristics, MisFirstNeedsFourColorsOnTrilattice) {
    const auto g = three("E");
    EXPECT_EQ(rlf_mis_first(g).colors, 4);
    EXPECT_EQ(chromatic_bruteforce(g).chi, 3);
}

TEST(Mis, MaximumIndependentSets) {
    EXPECT_EQ(maximum_independent_set(three("B")), (std::vector<int>{0, 2}));
    EXPECT_EQ(maximum_independent_set(three("E")).size(), 3u);
    EXPECT_EQ(maximum_independent_set(three("I")).size(), 1u);
    EXPECT_EQ(maximum_independent_set(three("J")).size(), 2u);
    const auto g = three("E");
    for (const auto& set : {maximum_independent_set(g), maximum_independent_set(g, 0b111110u)}) {
        for (std::size_t a = 0; a < set.size(); ++a)
            for (std::size_t b = a + 1; b < set.size(); ++b) EXPECT_FALSE(g.adjacent(set[a], set[b]));
    }
    for (int v : maximum_independent_set(g, 0b111110u)) EXPECT_NE(v, 0);
}

TEST(Energies, PottsAndQubo) {
    const auto g = three("A");
    EXPECT_DOUBLE_EQ(potts_energy({1, 2, 3}, g, 2.0, 5.0), -6.0);
    EXPECT_DOUBLE_EQ(potts_energy({1, 1, 0}, g, 2.0, 5.0), 1.0);
    EXPECT_DOUBLE_EQ(potts_energy({0, 0, 0}, g, 2.0, 5.0), 0.0);
    EXPECT_DOUBLE_EQ(qubo_energy(one_hot({1, 2, 3}, 3), g), 0.0);
    EXPECT_DOUBLE_EQ(qubo_energy(one_hot({1, 1, 0}, 3), g), 2.0);
    const std::vector<std::vector<int>> doubled = {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
    EXPECT_DOUBLE_EQ(qubo_energy(doubled, g), 2.0);
    EXPECT_EQ(one_hot({0, 2}, 2), (std::vector<std::vector<int>>{{0, 0}, {0, 1}}));
}

TEST(FinalGround, SquareFromFigureFour) {
    const auto& p = find_preset("fig4-square-2ryd");
    const auto gs = final_ground_states(p.problem_graph(), p.level_scheme(), p.delta_max);
    const Basis b(4, 2);
    std::set<std::string> labels;
    for (auto s : gs) labels.insert(b.label(s));
    EXPECT_EQ(labels, (std::set<std::string>{"1212", "2121"}));
}

TEST(FinalGround, SquareK4IsInvalid) {
    const auto& p = find_preset("fig6-squareK4");
    const auto g = p.problem_graph();
    const auto gs = final_ground_states(g, p.level_scheme(), p.delta_max);
    const Basis b(4, 3);
    ASSERT_FALSE(gs.empty());
    for (auto s : gs) EXPECT_FALSE(is_valid_coloring(b.decode(s), g)) << b.label(s);
}
