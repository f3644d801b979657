#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quditcolor/basis.hpp"
#include "quditcolor/errors.hpp"
#include "quditcolor/graph.hpp"
#include "quditcolor/interactions.hpp"

namespace quditcolor {

using cplx = std::complex<double>;
using StateVector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxDenseDimension = 4096;

// Which pairs contribute to the interaction energy. The default is every
// pair with both tails, no cutoff.
struct InteractionOptions {
    std::optional<double> cutoff;  // um, pairs farther apart are dropped
    bool edges_only = false;
    bool intra_only = false;
};

// shift[pair][a * d + b] for pair (u, v), u < v, in MHz.
struct PairShiftTable {
    int d = 0;
    std::vector<Edge> pairs;
    std::vector<std::vector<double>> shift;
};

inline PairShiftTable pair_shift_table(const ProblemGraph& g, const LevelScheme& levels,
                                       const InteractionOptions& opts = {}) {
    levels.validate();
    PairShiftTable t;
    t.d = levels.k + 1;
    const int n = g.size();
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const double r = pair_distance(g, u, v);
            if (opts.cutoff && r > *opts.cutoff) continue;
            if (opts.edges_only && !g.adjacent(u, v)) continue;
            std::vector<double> tab(static_cast<std::size_t>(t.d) * t.d, 0.0);
            for (int a = 1; a < t.d; ++a)
                for (int b = 1; b < t.d; ++b) {
                    if (opts.intra_only && a != b) continue;
                    tab[a * t.d + b] = vdw_shift(levels.c6(a, b), r);
                }
            t.pairs.emplace_back(u, v);
            t.shift.push_back(std::move(tab));
        }
    }
    return t;
}

inline double diagonal_energy(std::size_t state, const ProblemGraph& g, const LevelScheme& levels,
                              const std::vector<double>& delta, const InteractionOptions& opts = {}) {
    if (static_cast<int>(delta.size()) != levels.k) throw ConfigError("diagonal_energy: delta must have k entries");
    const Basis basis(g.size(), levels.k);
    const auto digits = basis.decode(state);
    double e = 0.0;
    for (int dv : digits)
        if (dv > 0) e -= delta[dv - 1];
    const auto table = pair_shift_table(g, levels, opts);
    for (std::size_t p = 0; p < table.pairs.size(); ++p) {
        const auto [u, v] = table.pairs[p];
        e += table.shift[p][digits[u] * table.d + digits[v]];
    }
    return e;
}

// Diagonal split as E(delta) = interaction - sum_i delta_i * count_i.
struct DiagonalModel {
    Basis basis;
    std::vector<double> interaction;
    std::vector<std::vector<std::uint8_t>> count;  // count[i-1][s]: atoms of state s in level i

    std::vector<double> energies(const std::vector<double>& delta) const {
        if (static_cast<int>(delta.size()) != basis.k()) throw ConfigError("delta must have k entries");
        std::vector<double> e = interaction;
        for (int i = 0; i < basis.k(); ++i) {
            if (delta[i] == 0.0) continue;
            const auto& c = count[i];
            for (std::size_t s = 0; s < e.size(); ++s) e[s] -= delta[i] * c[s];
        }
        return e;
    }
};

inline DiagonalModel diagonal_model(const ProblemGraph& g, const LevelScheme& levels,
                                    const InteractionOptions& opts = {}) {
    DiagonalModel m{Basis(g.size(), levels.k), {}, {}};
    const auto& basis = m.basis;
    const std::size_t dim = basis.dim();
    const int d = basis.levels();
    const auto table = pair_shift_table(g, levels, opts);
    m.interaction.assign(dim, 0.0);
    m.count.assign(levels.k, std::vector<std::uint8_t>(dim, 0));
    std::vector<int> digits(g.size(), 0);
    for (std::size_t s = 0; s < dim; ++s) {
        double e = 0.0;
        for (std::size_t p = 0; p < table.pairs.size(); ++p) {
            const auto [u, v] = table.pairs[p];
            e += table.shift[p][digits[u] * d + digits[v]];
        }
        m.interaction[s] = e;
        for (int dv : digits)
            if (dv > 0) m.count[dv - 1][s]++;
        for (int v = 0; v < g.size(); ++v) {
            if (++digits[v] < d) break;
            digits[v] = 0;
        }
    }
    return m;
}

inline std::vector<double> build_diagonal(const ProblemGraph& g, const LevelScheme& levels,
                                          const std::vector<double>& delta, const InteractionOptions& opts = {}) {
    return diagonal_model(g, levels, opts).energies(delta);
}

// Single-atom drive D with D[0][i] = D[i][0] = omega_i / 2 (MHz).
class DriveGenerator {
public:
    explicit DriveGenerator(const std::vector<double>& omega) {
        const int d = static_cast<int>(omega.size()) + 1;
        matrix_ = Eigen::MatrixXd::Zero(d, d);
        for (int i = 1; i < d; ++i) matrix_(0, i) = matrix_(i, 0) = 0.5 * omega[i - 1];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix_);
        values_ = es.eigenvalues();
        vectors_ = es.eigenvectors();
    }

    const Eigen::MatrixXd& matrix() const { return matrix_; }
    const Eigen::VectorXd& eigenvalues() const { return values_; }

    // exp(-i 2pi D dt)
    Eigen::MatrixXcd propagator(double dt) const {
        const int d = static_cast<int>(values_.size());
        Eigen::VectorXcd phase(d);
        for (int j = 0; j < d; ++j) phase[j] = std::polar(1.0, -2.0 * std::numbers::pi * values_[j] * dt);
        const Eigen::MatrixXcd v = vectors_.cast<cplx>();
        return v * phase.asDiagonal() * v.transpose();
    }

private:
    Eigen::MatrixXd matrix_;
    Eigen::VectorXd values_;
    Eigen::MatrixXd vectors_;
};

// psi <- (U acting on atom v) psi
inline void apply_single_atom(StateVector& psi, const Eigen::MatrixXcd& u, const Basis& basis, int v) {
    const int d = basis.levels();
    const std::size_t stride = basis.stride(v);
    const std::size_t block = stride * d;
    cplx in[8];
    for (std::size_t base = 0; base < basis.dim(); base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            for (int a = 0; a < d; ++a) in[a] = psi[i0 + a * stride];
            for (int a = 0; a < d; ++a) {
                cplx acc = 0.0;
                for (int b = 0; b < d; ++b) acc += u(a, b) * in[b];
                psi[i0 + a * stride] = acc;
            }
        }
    }
}

inline void apply_all_atoms(StateVector& psi, const Eigen::MatrixXcd& u, const Basis& basis) {
    for (int v = 0; v < basis.atoms(); ++v) apply_single_atom(psi, u, basis, v);
}

inline void apply_drive_step(StateVector& psi, const std::vector<double>& omega, double dt, const Basis& basis) {
    if (static_cast<int>(omega.size()) != basis.k()) throw ConfigError("apply_drive_step: omega must have k entries");
    if (static_cast<std::size_t>(psi.size()) != basis.dim())
        throw std::invalid_argument("apply_drive_step: state dimension mismatch");
    apply_all_atoms(psi, DriveGenerator(omega).propagator(dt), basis);
}

// Full real symmetric H in MHz.
inline Eigen::MatrixXd dense_hamiltonian(const std::vector<double>& diagonal, const std::vector<double>& omega,
                                         const Basis& basis) {
    if (basis.dim() > kMaxDenseDimension)
        throw DimensionError("dense_hamiltonian: dimension " + std::to_string(basis.dim()) + " exceeds " +
                             std::to_string(kMaxDenseDimension));
    const std::size_t dim = basis.dim();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t s = 0; s < dim; ++s) h(s, s) = diagonal[s];
    for (std::size_t s = 0; s < dim; ++s) {
        for (int v = 0; v < basis.atoms(); ++v) {
            if (basis.digit(s, v) != 0) continue;
            for (int i = 1; i <= basis.k(); ++i) {
                const std::size_t t = s + i * basis.stride(v);
                h(s, t) = h(t, s) = 0.5 * omega[i - 1];
            }
        }
    }
    return h;
}

inline Eigen::MatrixXd dense_hamiltonian(const ProblemGraph& g, const LevelScheme& levels,
                                         const std::vector<double>& delta, const std::vector<double>& omega,
                                         const InteractionOptions& opts = {}) {
    const Basis basis(g.size(), levels.k);
    if (basis.dim() > kMaxDenseDimension)
        throw DimensionError("dense_hamiltonian: dimension " + std::to_string(basis.dim()) + " exceeds " +
                             std::to_string(kMaxDenseDimension));
    if (static_cast<int>(omega.size()) != levels.k) throw ConfigError("omega must have k entries");
    return dense_hamiltonian(build_diagonal(g, levels, delta, opts), omega, basis);
}

// out = H in without forming H.
inline void apply_hamiltonian(const std::vector<double>& diagonal, const std::vector<double>& omega,
                              const Basis& basis, const StateVector& in, StateVector& out) {
    const std::size_t dim = basis.dim();
    out.resize(static_cast<Eigen::Index>(dim));
    for (std::size_t s = 0; s < dim; ++s) out[s] = diagonal[s] * in[s];
    for (int v = 0; v < basis.atoms(); ++v) {
        const std::size_t stride = basis.stride(v);
        const std::size_t block = stride * basis.levels();
        for (std::size_t base = 0; base < dim; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                const std::size_t g0 = base + off;
                for (int i = 1; i <= basis.k(); ++i) {
                    const double w = 0.5 * omega[i - 1];
                    const std::size_t r = g0 + i * stride;
                    out[g0] += w * in[r];
                    out[r] += w * in[g0];
                }
            }
        }
    }
}

}  // namespace quditcolor
