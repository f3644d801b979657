#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quditcolor/basis.hpp"
#include "quditcolor/errors.hpp"
#include "quditcolor/graph.hpp"
#include "quditcolor/hamiltonian.hpp"
#include "quditcolor/interactions.hpp"
#include "quditcolor/schedule.hpp"

namespace quditcolor {

enum class StepRule { Midpoint, Left };

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct AnnealOptions {
    int samples = 100;  // uniform intervals; both endpoints are recorded
    int substeps = 0;   // Strang substeps per Trotter step, 0 = automatic
    double substep_phase = 1.0;  // rad, automatic rule bound on 2pi * h * spread
    StepRule rule = StepRule::Midpoint;
    InteractionOptions interactions;
    double degeneracy_tol = 1e-3;  // MHz
    std::size_t overlap_dim_limit = 256;
    std::vector<std::vector<std::size_t>> tracked;  // basis-index sets, overlaps recorded per sample
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> norm;
    std::vector<double> energy;
    std::vector<double> ground_overlap;  // NaN when not computed
    std::vector<std::vector<double>> tracked;  // [sample][set]
};

struct AnnealResult {
    StateVector state;
    Trajectory trajectory;
    int max_substeps = 0;
    long long total_substeps = 0;
};

inline StateVector ground_state(const Basis& basis) {
    StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(basis.dim()));
    psi[0] = 1.0;
    return psi;
}

inline double step_time(int m, double dt, StepRule rule) {
    return rule == StepRule::Midpoint ? (m + 0.5) * dt : m * dt;
}

// drive_range: spectral width of the drive term, added to the diagonal spread.
inline int auto_substeps(const std::vector<double>& energies, double dt, double phase, double drive_range = 0.0) {
    const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());
    const double spread = *hi - *lo + drive_range;
    return std::max(1, static_cast<int>(std::ceil(kTwoPi * dt * spread / phase)));
}

inline double expectation(const StateVector& psi, const std::vector<double>& diagonal, const std::vector<double>& omega,
                          const Basis& basis) {
    StateVector h;
    apply_hamiltonian(diagonal, omega, basis, psi, h);
    return psi.dot(h).real();
}

// Projection weight on the eigenspace within tol of the lowest eigenvalue.
inline double ground_manifold_overlap(const StateVector& psi, const std::vector<double>& diagonal,
                                      const std::vector<double>& omega, const Basis& basis, double tol) {
    const Eigen::MatrixXd h = dense_hamiltonian(diagonal, omega, basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const auto& w = es.eigenvalues();
    double total = 0.0;
    for (Eigen::Index j = 0; j < w.size() && w[j] <= w[0] + tol; ++j)
        total += std::norm(es.eigenvectors().col(j).cast<cplx>().dot(psi));
    return total;
}

inline double ground_manifold_overlap(const StateVector& psi, const ProblemGraph& g, const LevelScheme& levels,
                                      const DrivePlan& plan, double t, double tol = 1e-3,
                                      const InteractionOptions& opts = {}) {
    const auto p = drive_at(t, plan);
    const Basis basis(g.size(), levels.k);
    return ground_manifold_overlap(psi, build_diagonal(g, levels, p.delta, opts), p.omega, basis, tol);
}

namespace detail {

inline std::vector<int> sample_steps(int p, int samples) {
    std::vector<int> out;
    const int n = std::max(1, samples);
    for (int j = 0; j <= n; ++j) {
        const int m = static_cast<int>(std::llround(static_cast<double>(j) * p / n));
        if (out.empty() || m > out.back()) out.push_back(m);
    }
    return out;
}

}  // namespace detail

// Trotterized anneal from |gg...g> with the split propagator.
inline AnnealResult anneal(const ProblemGraph& g, const LevelScheme& levels, const DrivePlan& plan,
                           const AnnealOptions& opts = {}) {
    levels.validate();
    plan.validate(levels.k);
    const auto model = diagonal_model(g, levels, opts.interactions);
    const Basis& basis = model.basis;
    const int p = plan.trotter_steps;
    const double dt = plan.T / p;

    AnnealResult res;
    res.state = ground_state(basis);
    StateVector& psi = res.state;

    const auto samples = detail::sample_steps(p, opts.samples);
    std::size_t next_sample = 0;
    auto record = [&](int m) {
        const double t = m * dt;
        const auto prm = drive_at(std::min(t, plan.T), plan);
        const auto e = model.energies(prm.delta);
        auto& tr = res.trajectory;
        tr.times.push_back(t);
        tr.norm.push_back(psi.norm());
        tr.energy.push_back(expectation(psi, e, prm.omega, basis));
        if (basis.dim() <= opts.overlap_dim_limit)
            tr.ground_overlap.push_back(ground_manifold_overlap(psi, e, prm.omega, basis, opts.degeneracy_tol));
        else
            tr.ground_overlap.push_back(std::numeric_limits<double>::quiet_NaN());
        std::vector<double> tracked;
        for (const auto& set : opts.tracked) {
            double w = 0.0;
            for (std::size_t s : set) w += std::norm(psi[static_cast<Eigen::Index>(s)]);
            tracked.push_back(w);
        }
        tr.tracked.push_back(std::move(tracked));
    };
    if (samples[next_sample] == 0) record(0), ++next_sample;

    const std::size_t dim = basis.dim();
    std::vector<cplx> half(dim), full(dim);
    for (int m = 0; m < p; ++m) {
        const auto prm = drive_at(step_time(m, dt, opts.rule), plan);
        const auto e = model.energies(prm.delta);
        double omega_norm = 0.0;
        for (double w : prm.omega) omega_norm += w * w;
        const double drive_range = basis.atoms() * std::sqrt(omega_norm);
        const int s = opts.substeps > 0 ? opts.substeps : auto_substeps(e, dt, opts.substep_phase, drive_range);
        const double h = dt / s;
        for (std::size_t i = 0; i < dim; ++i) {
            half[i] = std::polar(1.0, -std::numbers::pi * e[i] * h);
            full[i] = half[i] * half[i];
        }
        const Eigen::MatrixXcd u = DriveGenerator(prm.omega).propagator(h);
        for (std::size_t i = 0; i < dim; ++i) psi[i] *= half[i];
        for (int j = 0; j < s; ++j) {
            apply_all_atoms(psi, u, basis);
            const auto& ph = (j + 1 == s) ? half : full;
            for (std::size_t i = 0; i < dim; ++i) psi[i] *= ph[i];
        }
        res.max_substeps = std::max(res.max_substeps, s);
        res.total_substeps += s;
        if (next_sample < samples.size() && samples[next_sample] == m + 1) record(m + 1), ++next_sample;
    }
    return res;
}

struct OracleOptions {
    StepRule rule = StepRule::Midpoint;
    InteractionOptions interactions;
    std::size_t dense_limit = 64;  // eigendecomposition up to here, Chebyshev above
};

namespace detail {

// psi <- exp(-i tau H) psi by Chebyshev expansion on [lo, hi].
inline void chebyshev_propagate(StateVector& psi, const std::vector<double>& diagonal, const std::vector<double>& omega,
                                const Basis& basis, double tau, double lo, double hi) {
    const double c = 0.5 * (hi + lo);
    const double r = std::max(0.5 * (hi - lo), 1e-12);
    const double x = tau * r;
    auto apply_x = [&](const StateVector& in, StateVector& out) {
        apply_hamiltonian(diagonal, omega, basis, in, out);
        out = (out - c * in) / r;
    };
    StateVector t_prev = psi, t_cur, t_next;
    apply_x(t_prev, t_cur);
    StateVector acc = std::cyl_bessel_j(0.0, x) * t_prev;
    cplx mi_pow(0.0, -1.0);  // (-i)^n
    acc += 2.0 * mi_pow * std::cyl_bessel_j(1.0, x) * t_cur;
    int small = 0;
    for (int n = 2; n < 100000; ++n) {
        apply_x(t_cur, t_next);
        t_next = 2.0 * t_next - t_prev;
        mi_pow *= cplx(0.0, -1.0);
        const double jn = std::cyl_bessel_j(static_cast<double>(n), x);
        acc += 2.0 * mi_pow * jn * t_next;
        t_prev.swap(t_cur);
        t_cur.swap(t_next);
        if (n > x && std::abs(jn) < 1e-15) {
            if (++small >= 2) break;
        } else {
            small = 0;
        }
    }
    psi = std::polar(1.0, -tau * c) * acc;
}

}  // namespace detail

// Same stepping as anneal() but each step applies the exact exponential of
// the full H(t_m).
inline StateVector anneal_oracle(const ProblemGraph& g, const LevelScheme& levels, const DrivePlan& plan,
                                 const OracleOptions& opts = {}) {
    levels.validate();
    plan.validate(levels.k);
    const auto model = diagonal_model(g, levels, opts.interactions);
    const Basis& basis = model.basis;
    if (basis.dim() > kMaxDenseDimension)
        throw DimensionError("anneal_oracle: dimension " + std::to_string(basis.dim()) + " exceeds " +
                             std::to_string(kMaxDenseDimension));
    const int p = plan.trotter_steps;
    const double dt = plan.T / p;
    const double tau = kTwoPi * dt;
    StateVector psi = ground_state(basis);
    for (int m = 0; m < p; ++m) {
        const auto prm = drive_at(step_time(m, dt, opts.rule), plan);
        const auto e = model.energies(prm.delta);
        if (basis.dim() <= opts.dense_limit) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_hamiltonian(e, prm.omega, basis));
            const Eigen::MatrixXcd v = es.eigenvectors().cast<cplx>();
            StateVector y = v.adjoint() * psi;
            for (Eigen::Index j = 0; j < y.size(); ++j) y[j] *= std::polar(1.0, -tau * es.eigenvalues()[j]);
            psi = v * y;
        } else {
            const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
            double bound = 0.0;
            for (double w : prm.omega) bound += 0.5 * std::abs(w);
            bound *= basis.atoms();
            detail::chebyshev_propagate(psi, e, prm.omega, basis, tau, *lo - bound, *hi + bound);
        }
    }
    return psi;
}

struct SpectrumTrace {
    std::vector<double> times;
    std::vector<std::vector<double>> values;              // [time][level], ascending
    std::vector<std::vector<std::size_t>> dominant;       // largest-weight basis state
    std::vector<std::vector<double>> dominant_weight;
};

inline SpectrumTrace instantaneous_spectrum(const ProblemGraph& g, const LevelScheme& levels, const DrivePlan& plan,
                                            const std::vector<double>& times, int m,
                                            const InteractionOptions& iopts = {}) {
    levels.validate();
    plan.validate(levels.k);
    if (m < 1) throw ConfigError("instantaneous_spectrum: need at least one level");
    const auto model = diagonal_model(g, levels, iopts);
    const Basis& basis = model.basis;
    if (basis.dim() > kMaxDenseDimension)
        throw DimensionError("instantaneous_spectrum: dimension " + std::to_string(basis.dim()) + " exceeds " +
                             std::to_string(kMaxDenseDimension));
    SpectrumTrace out;
    for (double t : times) {
        const auto prm = drive_at(t, plan);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_hamiltonian(model.energies(prm.delta), prm.omega, basis));
        const Eigen::Index count = std::min<Eigen::Index>(m, es.eigenvalues().size());
        std::vector<double> vals;
        std::vector<std::size_t> dom;
        std::vector<double> wt;
        for (Eigen::Index j = 0; j < count; ++j) {
            vals.push_back(es.eigenvalues()[j]);
            Eigen::Index arg = 0;
            const double w = es.eigenvectors().col(j).cwiseAbs2().maxCoeff(&arg);
            dom.push_back(static_cast<std::size_t>(arg));
            wt.push_back(w);
        }
        out.times.push_back(t);
        out.values.push_back(std::move(vals));
        out.dominant.push_back(std::move(dom));
        out.dominant_weight.push_back(std::move(wt));
    }
    return out;
}

}  // namespace quditcolor
