#pragma once

// Full secular Lindblad superoperator (populations + coherences) for small N.
// This is a verification harness for the rate-equation pipeline, not a
// performance path.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "spinlind/bath.hpp"
#include "spinlind/errors.hpp"
#include "spinlind/spectral.hpp"

namespace spinlind {

// Superoperator on the vectorized eigen-basis density matrix, row-major:
// vec index of rho_ab is a*dim + b. The dissipative part is real; the
// coherent part -i(lambda_a - lambda_b) rho_ab is kept as a diagonal phase
// vector so the assembled real-doubled matrix [[S, D], [-D, S]] acts on
// stacked [Re rho; Im rho].
struct Superoperator {
    int dim = 0;                       // Hilbert dimension 2^N
    Eigen::MatrixXd dissipative;       // S, size dim^2 x dim^2
    Eigen::VectorXd phase;             // D_ab = lambda_a - lambda_b
    bool merged_channels = false;      // any frequency-degenerate jump groups
    bool degenerate_pairs = false;     // any omega ~ 0 coupling warnings
    std::uint64_t spec_hash = 0;

    int super_dim() const { return dim * dim; }

    // L = S - i diag(phase) acting on complex vec(rho)
    Eigen::MatrixXcd complex_matrix() const {
        Eigen::MatrixXcd l = dissipative.cast<std::complex<double>>();
        for (int i = 0; i < super_dim(); ++i)
            l(i, i) -= std::complex<double>(0.0, phase(i));
        return l;
    }

    Eigen::MatrixXd doubled() const {
        const int s = super_dim();
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * s, 2 * s);
        m.topLeftCorner(s, s) = dissipative;
        m.bottomRightCorner(s, s) = dissipative;
        for (int i = 0; i < s; ++i) {
            m(i, s + i) = phase(i);
            m(s + i, i) = -phase(i);
        }
        return m;
    }

    // Rows/columns of S on diagonal entries: the population rate matrix.
    Eigen::MatrixXd population_block() const {
        Eigen::MatrixXd m(dim, dim);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                m(a, b) = dissipative(a * dim + a, b * dim + b);
        return m;
    }
};

namespace detail {

// rate * (2 V rho W - W V rho - rho W V) with W = V^T, added onto S.
// Row-major vectorization: vec(A rho B) = (A kron B^T) vec(rho).
inline void add_dissipator(Eigen::MatrixXd& s, double rate, const Eigen::MatrixXd& v) {
    if (rate == 0.0) return;
    const Eigen::MatrixXd w = v.transpose();
    const Eigen::MatrixXd wv = w * v;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(v.rows(), v.cols());
    s += rate * (2.0 * Eigen::kroneckerProduct(v, v).eval() -
                 Eigen::kroneckerProduct(wv, id).eval() -
                 Eigen::kroneckerProduct(id, wv.transpose()).eval());
}

}  // namespace detail

inline Superoperator build_liouvillian(const ChainSpec& spec, const EigenSystem& es,
                                       const ChannelSet& channels) {
    if (channels.spec_hash != spec.hash() ||
        (es.spec_hash != 0 && es.spec_hash != spec.hash()))
        throw consistency_error("build_liouvillian: stale inputs");
    const int dim = es.dim();
    if (dim > 32)
        throw capacity_error("build_liouvillian: limited to 2^N <= 32");
    Superoperator sup;
    sup.dim = dim;
    sup.spec_hash = spec.hash();
    sup.dissipative = Eigen::MatrixXd::Zero(dim * dim, dim * dim);
    sup.phase.resize(dim * dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            sup.phase(a * dim + b) = es.eigenvalues(a) - es.eigenvalues(b);
    sup.degenerate_pairs = !channels.warnings.empty();
    for (int mu = 1; mu <= spec.n_spins; ++mu) {
        const double kappa = spec.dissipation_rate[mu - 1];
        if (kappa == 0.0) continue;
        for (const auto& g : group_by_frequency(channels.for_reservoir(mu))) {
            if (g.merged()) sup.merged_channels = true;
            // grouped jump operator V = sum c |l><u|
            Eigen::MatrixXd v = Eigen::MatrixXd::Zero(dim, dim);
            for (const auto& c : g.members) v(c.lower - 1, c.upper - 1) += c.coefficient;
            const auto rates = bath_rates(g.omega, kappa, spec.temperature[mu - 1]);
            detail::add_dissipator(sup.dissipative, rates.downward, v);  // J(-omega)
            detail::add_dissipator(sup.dissipative, rates.upward, Eigen::MatrixXd(v.transpose()));
        }
    }
    return sup;
}

// Complex density-matrix trajectory under the full superoperator.
inline std::vector<Eigen::MatrixXcd> evolve_density(const Superoperator& sup,
                                                    const Eigen::MatrixXcd& rho0,
                                                    const std::vector<double>& times) {
    const int dim = sup.dim;
    if (rho0.rows() != dim || rho0.cols() != dim)
        throw argument_error("evolve_density: density matrix dimension mismatch");
    const int s = sup.super_dim();
    Eigen::VectorXd v(2 * s);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            v(a * dim + b) = rho0(a, b).real();
            v(s + a * dim + b) = rho0(a, b).imag();
        }
    const Eigen::MatrixXd l = sup.doubled();
    std::vector<Eigen::MatrixXcd> out;
    double t_prev = 0.0;
    for (double t : times) {
        if (t < t_prev) throw argument_error("evolve_density: time grid must be nondecreasing");
        if (t > t_prev) v = (l * (t - t_prev)).exp() * v;
        t_prev = t;
        Eigen::MatrixXcd rho(dim, dim);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                rho(a, b) = std::complex<double>(v(a * dim + b), v(s + a * dim + b));
        out.push_back(rho);
    }
    return out;
}

// Number of (numerically) zero eigenvalues of the complex superoperator.
inline int zero_mode_count(const Superoperator& sup, double rel_tol = 1e-10) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(sup.complex_matrix());
    const double scale = std::max(1e-300, solver.eigenvalues().cwiseAbs().maxCoeff());
    int count = 0;
    for (int i = 0; i < solver.eigenvalues().size(); ++i)
        if (std::abs(solver.eigenvalues()(i)) <= rel_tol * scale) ++count;
    return count;
}

// Unique steady density matrix from the superoperator nullvector.
inline Eigen::MatrixXcd steady_density(const Superoperator& sup, double rel_tol = 1e-10) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(sup.complex_matrix());
    const double scale = std::max(1e-300, solver.eigenvalues().cwiseAbs().maxCoeff());
    int found = -1;
    for (int i = 0; i < solver.eigenvalues().size(); ++i) {
        if (std::abs(solver.eigenvalues()(i)) <= rel_tol * scale) {
            if (found >= 0)
                throw underdetermined_error("steady_density: multiple zero modes");
            found = i;
        }
    }
    if (found < 0) throw numeric_error("steady_density: no zero mode found");
    const int dim = sup.dim;
    Eigen::MatrixXcd rho(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            rho(a, b) = solver.eigenvectors()(a * dim + b, found);
    rho = 0.5 * (rho + rho.adjoint().eval());  // hermitize
    const std::complex<double> tr = rho.trace();
    if (std::abs(tr) < 1e-12)
        throw numeric_error("steady_density: traceless nullvector");
    rho /= tr;
    return rho;
}

enum class DecayStatus { decays, persists, inconclusive };

struct CoherenceDecayReport {
    DecayStatus status = DecayStatus::inconclusive;
    double slowest_rate = 0.0;  // smallest |Re| over coherence-supported modes
};

// True iff every eigenmode with support on off-diagonal elements relaxes.
// Degenerate channel structure makes the secular argument inapplicable, so
// such specs report inconclusive rather than pass/fail.
inline CoherenceDecayReport coherence_decay_check(const Superoperator& sup,
                                                  const ChainSpec& spec) {
    CoherenceDecayReport report;
    if (sup.merged_channels || sup.degenerate_pairs) return report;
    double kappa_max = 0.0;
    for (double k : spec.dissipation_rate) kappa_max = std::max(kappa_max, k);
    const double eps = 1e-12 * kappa_max;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(sup.complex_matrix());
    const int dim = sup.dim;
    report.status = DecayStatus::decays;
    report.slowest_rate = std::numeric_limits<double>::infinity();
    for (int i = 0; i < solver.eigenvalues().size(); ++i) {
        const auto vec = solver.eigenvectors().col(i);
        double offdiag = 0.0;
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                if (a != b) offdiag = std::max(offdiag, std::abs(vec(a * dim + b)));
        if (offdiag <= 1e-8 * vec.cwiseAbs().maxCoeff()) continue;
        const double re = solver.eigenvalues()(i).real();
        if (re >= -eps) {
            report.status = DecayStatus::persists;
            report.slowest_rate = 0.0;
            return report;
        }
        report.slowest_rate = std::min(report.slowest_rate, -re);
    }
    return report;
}

}  // namespace spinlind
