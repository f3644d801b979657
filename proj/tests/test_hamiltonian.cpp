#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "quditcolor/hamiltonian.hpp"
#include "quditcolor/presets.hpp"
#include "quditcolor/schedule.hpp"

using namespace quditcolor;

namespace {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Drive part built from tensor products. The first vertex is the least
// significant digit, so it sits rightmost in the product.
Eigen::MatrixXd kron_drive(int n, const std::vector<double>& omega) {
    const int d = static_cast<int>(omega.size()) + 1;
    Eigen::MatrixXd single = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) single(0, i) = single(i, 0) = omega[i - 1] / 2;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    Eigen::Index dim = 1;
    for (int v = 0; v < n; ++v) dim *= d;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int v = 0; v < n; ++v) {
        Eigen::MatrixXd term = Eigen::MatrixXd::Identity(1, 1);
        for (int w = n - 1; w >= 0; --w) term = kron(term, w == v ? single : id);
        h += term;
    }
    return h;
}

double oracle_energy(const std::vector<int>& digits, const ProblemGraph& g, const LevelScheme& s,
                     const std::vector<double>& delta) {
    double e = 0.0;
    for (int x : digits)
        if (x) e -= delta[x - 1];
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
            if (digits[u] && digits[v]) {
                const double r = pair_distance(g, u, v);
                e += s.c6(digits[u], digits[v]) * 1000.0 / std::pow(r, 6);
            }
    return e;
}

}  // namespace

TEST(Basis, EncodeDecodeRoundTrip) {
    const Basis b(4, 2);
    EXPECT_EQ(b.dim(), 81u);
    for (std::size_t s = 0; s < b.dim(); ++s) EXPECT_EQ(b.encode(b.decode(s)), s);
    EXPECT_EQ(b.encode({1, 0, 0, 0}), 1u);
    EXPECT_EQ(b.encode({0, 1, 0, 0}), 3u);
    EXPECT_EQ(b.label(b.encode({2, 1, 0, 2})), "2102");
    EXPECT_EQ(b.parse_label("2102"), b.encode({2, 1, 0, 2}));
    EXPECT_THROW(b.parse_label("21x2"), std::invalid_argument);
    EXPECT_THROW(b.encode({3, 0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(b.decode(81), std::out_of_range);
}

TEST(Basis, FreeFunctionsAndLimits) {
    EXPECT_EQ(basis_encode({1, 2, 3}, 3), 1u + 2u * 4 + 3u * 16);
    EXPECT_EQ(basis_decode(57, 3, 3), (std::vector<int>{1, 2, 3}));
    EXPECT_THROW(Basis(13, 3), DimensionError);
    EXPECT_NO_THROW(Basis(12, 3));
    EXPECT_THROW(Basis(0, 2), ConfigError);
}

TEST(Basis, PermuteMovesDigits) {
    const Basis b(3, 2);
    const std::size_t s = b.encode({1, 2, 0});
    EXPECT_EQ(b.permute(s, {1, 2, 0}), b.encode({0, 1, 2}));
}

TEST(Diagonal, MatchesPairwiseOracle) {
    const auto& p = find_preset("fig6-pentagon-3ryd");
    const auto g = p.problem_graph();
    const auto s = p.level_scheme();
    const std::vector<double> delta = {2.5, 10.0, 15.0};
    const auto e = build_diagonal(g, s, delta);
    const Basis b(g.size(), s.k);
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, b.dim() - 1);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t st = pick(rng);
        EXPECT_NEAR(e[st], oracle_energy(b.decode(st), g, s, delta), 1e-9);
        EXPECT_NEAR(diagonal_energy(st, g, s, delta), e[st], 1e-9);
    }
    EXPECT_DOUBLE_EQ(e[0], 0.0);
}

TEST(Diagonal, ModelIsLinearInDelta) {
    const auto g = builtin_graph("C", Optimizer::TwoRydberg);
    const auto s = level_scheme_preset("rb-65-70-75", 2);
    const auto m = diagonal_model(g, s);
    const auto e0 = m.energies({0.0, 0.0});
    const auto e1 = m.energies({1.5, -2.0});
    const Basis& b = m.basis;
    for (std::size_t st = 0; st < b.dim(); ++st) {
        int n1 = 0, n2 = 0;
        for (int x : b.decode(st)) n1 += x == 1, n2 += x == 2;
        EXPECT_NEAR(e1[st], e0[st] - 1.5 * n1 + 2.0 * n2, 1e-9);
    }
}

TEST(Diagonal, InteractionOptions) {
    const auto g = builtin_graph("B", Optimizer::TwoRydberg);
    const auto s = level_scheme_preset("rb-65-70-75", 2);
    const Basis b(4, 2);
    const std::size_t diag_pair = b.encode({1, 0, 1, 0});
    const std::size_t mixed_edge = b.encode({1, 2, 0, 0});
    const double r = 5.26 * std::sqrt(2.0);
    EXPECT_NEAR(diagonal_energy(diag_pair, g, s, {0, 0}), 361.0 * 1000.0 / std::pow(r, 6), 1e-9);
    EXPECT_DOUBLE_EQ(diagonal_energy(diag_pair, g, s, {0, 0}, {.cutoff = 6.0}), 0.0);
    EXPECT_DOUBLE_EQ(diagonal_energy(diag_pair, g, s, {0, 0}, {.cutoff = {}, .edges_only = true}), 0.0);
    EXPECT_LT(diagonal_energy(mixed_edge, g, s, {0, 0}), 0.0);
    EXPECT_DOUBLE_EQ(diagonal_energy(mixed_edge, g, s, {0, 0}, {.cutoff = {}, .edges_only = false, .intra_only = true}), 0.0);
    EXPECT_THROW(diagonal_energy(0, g, s, {1.0}), ConfigError);
}

TEST(Dense, MatchesKroneckerOracle) {
    const auto g = builtin_graph("A", Optimizer::ThreeRydberg);
    const auto s = level_scheme_preset("rb-65-70-75");
    const std::vector<double> delta = {-1.0, 2.0, 3.5}, omega = {1.0, 2.0, 5.0};
    const Eigen::MatrixXd h = dense_hamiltonian(g, s, delta, omega);
    Eigen::MatrixXd oracle = kron_drive(3, omega);
    const Basis b(3, 3);
    for (std::size_t st = 0; st < b.dim(); ++st) oracle(st, st) += oracle_energy(b.decode(st), g, s, delta);
    EXPECT_LT((h - oracle).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_EQ((h - h.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Dense, DimensionGuard) {
    const Basis b(7, 3);
    std::vector<double> diag(b.dim(), 0.0);
    EXPECT_THROW(dense_hamiltonian(diag, {1, 1, 1}, b), DimensionError);
}

TEST(MatrixFree, MatchesDense) {
    const auto g = builtin_graph("D", Optimizer::TwoRydberg);
    const auto s = level_scheme_preset("rb-65-70-75", 2);
    const Basis b(g.size(), 2);
    const auto diag = build_diagonal(g, s, {4.0, -3.0});
    const std::vector<double> omega = {3.0, 7.0};
    const Eigen::MatrixXd h = dense_hamiltonian(diag, omega, b);
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    StateVector psi(b.dim());
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = cplx(nd(rng), nd(rng));
    StateVector out;
    apply_hamiltonian(diag, omega, b, psi, out);
    EXPECT_LT((out - h.cast<cplx>() * psi).norm(), 1e-9);
}

TEST(Drive, GeneratorAndPropagator) {
    const DriveGenerator gen({1.0, 2.0, 5.0});
    EXPECT_DOUBLE_EQ(gen.matrix()(0, 3), 2.5);
    EXPECT_DOUBLE_EQ(gen.matrix()(1, 2), 0.0);
    const Eigen::MatrixXcd u = gen.propagator(0.013);
    EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-12);
    // Truncated Taylor series of exp(-i 2pi D dt) as oracle.
    const Eigen::MatrixXcd a = cplx(0, -2.0 * M_PI * 0.013) * gen.matrix().cast<cplx>();
    Eigen::MatrixXcd series = Eigen::MatrixXcd::Identity(4, 4), term = series;
    for (int n = 1; n < 30; ++n) {
        term = term * a / static_cast<double>(n);
        series += term;
    }
    EXPECT_LT((u - series).norm(), 1e-12);
}

TEST(Drive, SingleQubitRabiOscillation) {
    // One atom, one level: P(r) = sin^2(pi Omega t).
    const Basis b(1, 1);
    const double om = 2.0, t = 0.1;
    StateVector psi = StateVector::Zero(2);
    psi[0] = 1.0;
    apply_drive_step(psi, {om}, t, b);
    EXPECT_NEAR(std::norm(psi[1]), std::pow(std::sin(M_PI * om * t), 2), 1e-12);
    EXPECT_THROW(apply_drive_step(psi, {1.0, 2.0}, t, b), ConfigError);
}

TEST(Drive, ProductStepMatchesKronecker) {
    const Basis b(3, 2);
    const std::vector<double> omega = {3.0, 7.0};
    const double dt = 0.02;
    std::mt19937 rng(11);
    std::normal_distribution<double> nd;
    StateVector psi(b.dim());
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = cplx(nd(rng), nd(rng));
    psi.normalize();
    StateVector fast = psi;
    apply_drive_step(fast, omega, dt, b);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kron_drive(3, omega));
    Eigen::VectorXcd ph(es.eigenvalues().size());
    for (Eigen::Index j = 0; j < ph.size(); ++j) ph[j] = std::polar(1.0, -2.0 * M_PI * es.eigenvalues()[j] * dt);
    const Eigen::MatrixXcd v = es.eigenvectors().cast<cplx>();
    EXPECT_LT((fast - v * ph.asDiagonal() * v.adjoint() * psi).norm(), 1e-10);
}

TEST(Schedule, Shapes) {
    DrivePlan p;
    p.omega_max = {3, 7};
    p.delta_max = {8, 19};
    EXPECT_DOUBLE_EQ(schedule_delta(0.0, p), -1.0);
    EXPECT_DOUBLE_EQ(schedule_delta(0.4, p), -1.0);
    EXPECT_NEAR(schedule_delta(4.2, p), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(schedule_delta(8.4, p), 1.0);
    // Cubic oracle: 8 (t - t0)^3 / tau^3
    const double t = 6.0, tau = 7.6, t0 = 4.2;
    EXPECT_NEAR(schedule_delta(t, p), 8 * std::pow(t - t0, 3) / std::pow(tau, 3), 1e-14);
    EXPECT_NEAR(schedule_delta(0.4 + 1e-9, p), -1.0, 1e-8);
    EXPECT_NEAR(schedule_delta(8.0 - 1e-9, p), 1.0, 1e-8);

    EXPECT_DOUBLE_EQ(schedule_omega(0.0, p), 0.0);
    EXPECT_DOUBLE_EQ(schedule_omega(0.2, p), 0.5);
    EXPECT_DOUBLE_EQ(schedule_omega(5.0, p), 1.0);
    EXPECT_NEAR(schedule_omega(8.2, p), 0.5, 1e-12);
    EXPECT_DOUBLE_EQ(schedule_omega(8.4, p), 0.0);

    EXPECT_THROW(schedule_delta(-0.1, p), std::out_of_range);
    EXPECT_THROW(schedule_omega(8.5, p), std::out_of_range);

    const auto d = drive_at(8.2, p);
    EXPECT_NEAR(d.omega[1], 3.5, 1e-12);
    EXPECT_DOUBLE_EQ(d.delta[1], 19.0);
}

TEST(Schedule, DeltaIsMonotone) {
    DrivePlan p;
    p.omega_max = {1};
    p.delta_max = {1};
    double prev = -2.0;
    for (int i = 0; i <= 840; ++i) {
        const double v = schedule_delta(i * 0.01, p);
        EXPECT_GE(v, prev);
        prev = v;
    }
}
