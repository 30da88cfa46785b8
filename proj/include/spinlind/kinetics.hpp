#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "spinlind/bath.hpp"
#include "spinlind/errors.hpp"
#include "spinlind/spectral.hpp"

namespace spinlind {

// Generator of the population dynamics, M = sum_mu M_mu: off-diagonal entries
// are pairwise gain rates 2 c^2 J(+/-omega), diagonals make every column sum
// to zero.
struct RateMatrix {
    Eigen::MatrixXd m;
    std::vector<Eigen::MatrixXd> per_reservoir;
    std::uint64_t spec_hash = 0;

    int dim() const { return static_cast<int>(m.rows()); }
};

inline RateMatrix build_rate_matrix(const ChainSpec& spec, const EigenSystem& es,
                                    const ChannelSet& channels) {
    if (channels.spec_hash != spec.hash() ||
        (es.spec_hash != 0 && es.spec_hash != spec.hash()))
        throw consistency_error("build_rate_matrix: stale inputs");
    const int dim = es.dim();
    RateMatrix rm;
    rm.spec_hash = spec.hash();
    rm.per_reservoir.assign(spec.n_spins, Eigen::MatrixXd::Zero(dim, dim));
    for (const auto& c : channels.channels) {
        const double kappa = spec.dissipation_rate[c.reservoir - 1];
        if (kappa == 0.0) continue;
        const auto rates = bath_rates(c.omega, kappa, spec.temperature[c.reservoir - 1]);
        const double weight = 2.0 * c.coefficient * c.coefficient;
        auto& m = rm.per_reservoir[c.reservoir - 1];
        const int l = c.lower - 1, u = c.upper - 1;
        m(u, l) += weight * rates.upward;    // lower -> upper, photon absorbed
        m(l, l) -= weight * rates.upward;
        m(l, u) += weight * rates.downward;  // upper -> lower, photon emitted
        m(u, u) -= weight * rates.downward;
    }
    rm.m = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& part : rm.per_reservoir) rm.m += part;
    return rm;
}

// Signed net transition rate of one channel, positive when the bath pumps the
// pair upward: 2 c^2 [J(+omega) rho_l - J(-omega) rho_u].
inline double net_rate(const TransitionChannel& c, const ChainSpec& spec,
                       const Eigen::VectorXd& populations) {
    const double kappa = spec.dissipation_rate[c.reservoir - 1];
    if (kappa == 0.0) return 0.0;
    const auto rates = bath_rates(c.omega, kappa, spec.temperature[c.reservoir - 1]);
    return 2.0 * c.coefficient * c.coefficient *
           (rates.upward * populations(c.lower - 1) - rates.downward * populations(c.upper - 1));
}

struct SteadyStateSolution {
    Eigen::VectorXd populations;
    int nullspace_dim = 1;
    std::vector<double> component_fractions;
    bool unique = true;
    double residual_norm = 0.0;
};

namespace detail {

// Normalized nullvector of the restricted generator: one balance row is
// replaced by the normalization constraint. SVD fallback when the LU solution
// fails the residual or positivity gate.
inline Eigen::VectorXd component_nullvector(const Eigen::MatrixXd& m) {
    const int k = static_cast<int>(m.rows());
    Eigen::MatrixXd a = m;
    a.row(0).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
    b(0) = 1.0;
    Eigen::VectorXd x = a.partialPivLu().solve(b);
    const double scale = std::max(1e-300, m.cwiseAbs().maxCoeff());
    bool ok = x.allFinite() && (m * x).lpNorm<Eigen::Infinity>() <= 1e-10 * scale &&
              x.minCoeff() >= -1e-10;
    if (!ok) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
        x = svd.matrixV().col(k - 1);
        if (x.sum() < 0) x = -x;
        x /= x.sum();
    }
    if (x.minCoeff() < -1e-10)
        throw numeric_error("solve_steady_state: negative population beyond tolerance");
    x = x.cwiseMax(0.0);
    x /= x.sum();
    return x;
}

}  // namespace detail

inline SteadyStateSolution solve_steady_state(
    const RateMatrix& rm, const SubspaceDecomposition& decomposition,
    const std::optional<Eigen::VectorXd>& initial = std::nullopt) {
    const int dim = rm.dim();
    const int d = decomposition.count();
    SteadyStateSolution sol;
    sol.nullspace_dim = d;
    sol.unique = (d == 1);
    sol.populations = Eigen::VectorXd::Zero(dim);
    if (d > 1 && !initial)
        throw underdetermined_error(
            "solve_steady_state: " + std::to_string(d) +
            " independent components require an initial population vector");
    for (int mcomp = 0; mcomp < d; ++mcomp) {
        const auto& levels = decomposition.components[mcomp];
        const int k = static_cast<int>(levels.size());
        double fraction = 1.0;
        if (d > 1) {
            fraction = 0.0;
            for (int l : levels) fraction += (*initial)(l - 1);
        }
        sol.component_fractions.push_back(fraction);
        if (k == 1) {
            sol.populations(levels[0] - 1) = fraction;
            continue;
        }
        Eigen::MatrixXd sub(k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) sub(a, b) = rm.m(levels[a] - 1, levels[b] - 1);
        const Eigen::VectorXd x = detail::component_nullvector(sub);
        for (int a = 0; a < k; ++a) sol.populations(levels[a] - 1) = fraction * x(a);
    }
    sol.residual_norm = (rm.m * sol.populations).lpNorm<Eigen::Infinity>();
    return sol;
}

struct PopulationTrajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> populations;
};

namespace detail {

// Action of exp(M t) on p by uniformization: M = lam (P - I) with P
// substochastic-free; only matrix-vector products, stable for generators.
inline Eigen::VectorXd expm_action_uniformized(const Eigen::MatrixXd& m, Eigen::VectorXd p,
                                               double t) {
    const int dim = static_cast<int>(m.rows());
    double lam = 0.0;
    for (int i = 0; i < dim; ++i) lam = std::max(lam, -m(i, i));
    if (lam * t == 0.0) return p;
    const Eigen::MatrixXd pmat = Eigen::MatrixXd::Identity(dim, dim) + m / lam;
    // split so each segment keeps the Poisson tail short
    const int segments = std::max(1, static_cast<int>(std::ceil(lam * t / 64.0)));
    const double dt = t / segments;
    for (int s = 0; s < segments; ++s) {
        const double a = lam * dt;
        Eigen::VectorXd term = p, acc = Eigen::VectorXd::Zero(dim);
        double logw = -a;  // log Poisson weight, k = 0
        double wmax = 0.0;
        const int kmax = static_cast<int>(a + 20.0 * std::sqrt(a + 1.0) + 30.0);
        for (int k = 0;; ++k) {
            const double w = std::exp(logw);
            acc += w * term;
            wmax = std::max(wmax, w);
            if (k >= kmax && w < 1e-18 * std::max(1.0, wmax)) break;
            term = pmat * term;
            logw += std::log(a) - std::log1p(static_cast<double>(k));
        }
        p = acc;
    }
    return p;
}

}  // namespace detail

// p(t) solving dp/dt = M p on the given time grid. Dense matrix exponential
// up to dim 256, uniformized action beyond.
inline PopulationTrajectory evolve_populations(const RateMatrix& rm, const Eigen::VectorXd& p0,
                                               const std::vector<double>& times) {
    if (std::abs(p0.sum() - 1.0) > 1e-10 || p0.minCoeff() < -1e-12)
        throw argument_error("evolve_populations: initial populations not normalized");
    PopulationTrajectory traj;
    traj.times = times;
    Eigen::VectorXd p = p0;
    double t_prev = 0.0;
    const bool dense = rm.dim() <= 256;
    for (double t : times) {
        if (t < t_prev) throw argument_error("evolve_populations: time grid must be nondecreasing");
        const double dt = t - t_prev;
        if (dt > 0) {
            p = dense ? Eigen::VectorXd((rm.m * dt).exp() * p)
                      : detail::expm_action_uniformized(rm.m, p, dt);
        }
        if (!p.allFinite()) throw numeric_error("evolve_populations: non-finite populations");
        traj.populations.push_back(p);
        t_prev = t;
    }
    return traj;
}

// Slowest nonzero relaxation rate |Re lambda_2| of the generator.
inline double slowest_relaxation_rate(const RateMatrix& rm) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(rm.m);
    double slowest = std::numeric_limits<double>::infinity();
    const double scale = std::max(1e-300, rm.m.cwiseAbs().maxCoeff());
    for (int i = 0; i < rm.dim(); ++i) {
        const double re = solver.eigenvalues()(i).real();
        if (re < -1e-12 * scale) slowest = std::min(slowest, -re);
    }
    return slowest;
}

}  // namespace spinlind
