#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "spinlind/kinetics.hpp"
#include "spinlind/model.hpp"
#include "spinlind/spectral.hpp"

namespace spinlind {

struct ChannelContribution {
    int reservoir = 0;
    int lower = 0;
    int upper = 0;
    double omega = 0.0;
    double heat = 0.0;  // omega * net rate, positive into the chain
};

struct HeatCurrentReport {
    std::vector<double> per_reservoir;  // Q_mu, positive = heat flows into the chain
    double conservation_residual = 0.0;
    std::vector<ChannelContribution> contributions;

    double max_abs() const {
        double m = 0.0;
        for (double q : per_reservoir) m = std::max(m, std::abs(q));
        return m;
    }
};

// Steady-state heat currents Q_mu = sum over mu's channels of omega * Gamma.
// Refuses inputs that are not steady to within the residual gate.
inline HeatCurrentReport heat_currents(const ChainSpec& spec, const ChannelSet& channels,
                                       const RateMatrix& rm, const Eigen::VectorXd& steady,
                                       bool keep_contributions = false) {
    const double gate = 1e-8 * std::max(1e-300, rm.m.lpNorm<Eigen::Infinity>());
    if ((rm.m * steady).lpNorm<Eigen::Infinity>() > gate)
        throw argument_error("heat_currents: input is not a steady state of the rate matrix");
    HeatCurrentReport report;
    report.per_reservoir.assign(spec.n_spins, 0.0);
    for (const auto& c : channels.channels) {
        const double q = c.omega * net_rate(c, spec, steady);
        report.per_reservoir[c.reservoir - 1] += q;
        if (keep_contributions && q != 0.0)
            report.contributions.push_back({c.reservoir, c.lower, c.upper, c.omega, q});
    }
    for (double q : report.per_reservoir) report.conservation_residual += q;
    return report;
}

// One full solve: Hamiltonian -> eigensystem -> channels -> subspaces ->
// rate matrix -> steady state. The initial population vector is only needed
// when the dissipative channel graph splits.
struct ChainSolution {
    EigenSystem eigensystem;
    ChannelSet channels;
    SubspaceDecomposition decomposition;
    RateMatrix rate_matrix;
    SteadyStateSolution steady;
};

inline ChainSolution solve_chain(const ChainSpec& spec,
                                 const std::optional<Eigen::VectorXd>& initial = std::nullopt) {
    ChainSolution s;
    s.eigensystem = eigendecompose(build_hamiltonian(spec), spec.hash());
    s.channels = build_channels(s.eigensystem, spec);
    s.decomposition = detect_subspaces(s.channels, spec, s.eigensystem);
    s.rate_matrix = build_rate_matrix(spec, s.eigensystem, s.channels);
    std::optional<Eigen::VectorXd> init = initial;
    if (!init && s.decomposition.count() > 1)
        init = Eigen::VectorXd::Constant(s.eigensystem.dim(), 1.0 / s.eigensystem.dim());
    s.steady = solve_steady_state(s.rate_matrix, s.decomposition, init);
    return s;
}

namespace detail {

inline void parallel_for(int n, int workers, const std::function<void(int)>& body) {
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace detail

// Spins whose field direction is swept; the rest keep the base spec's angles.
struct ModulatorScenario {
    std::vector<int> swept_spins;  // 1-based, nonempty
    std::vector<double> theta_grid;

    void validate(int n_spins) const {
        if (swept_spins.empty()) throw validation_error("ModulatorScenario: empty swept set");
        for (int mu : swept_spins)
            if (mu < 1 || mu > n_spins)
                throw validation_error("ModulatorScenario: swept spin out of range");
        if (theta_grid.empty()) throw validation_error("ModulatorScenario: empty theta grid");
        for (std::size_t i = 1; i < theta_grid.size(); ++i)
            if (theta_grid[i] <= theta_grid[i - 1])
                throw validation_error("ModulatorScenario: theta grid must be strictly increasing");
    }
};

struct SweepRow {
    double parameter = 0.0;  // theta or T_b
    std::vector<double> currents;
    double residual = 0.0;
};

inline std::vector<SweepRow> run_modulator(const ModulatorScenario& scenario,
                                           const ChainSpec& base,
                                           const std::optional<Eigen::VectorXd>& initial = std::nullopt,
                                           int workers = 1) {
    base.validate();
    scenario.validate(base.n_spins);
    std::vector<SweepRow> rows(scenario.theta_grid.size());
    detail::parallel_for(static_cast<int>(rows.size()), workers, [&](int i) {
        const double theta = scenario.theta_grid[i];
        ChainSpec spec = base;
        for (int mu : scenario.swept_spins) spec.field_angle[mu - 1] = theta;
        try {
            const ChainSolution sol = solve_chain(spec, initial);
            const auto report =
                heat_currents(spec, sol.channels, sol.rate_matrix, sol.steady.populations);
            rows[i] = {theta, report.per_reservoir, sol.steady.residual_norm};
        } catch (const std::runtime_error& e) {
            throw numeric_error("modulator point theta=" + std::to_string(theta) + ": " + e.what());
        }
    });
    return rows;
}

struct BulkSweepRow {
    double bulk_temperature = 0.0;
    double bulk_dissipation = 0.0;
    std::vector<double> currents;
    double residual = 0.0;
};

// Per (T_b, kappa_b) steady currents with the nodal baths fixed by the base
// spec; bulk spins are all interior spins.
inline std::vector<BulkSweepRow> bulk_temperature_sweep(const ChainSpec& base,
                                                        const std::vector<double>& tb_grid,
                                                        const std::vector<double>& kb_grid,
                                                        int workers = 1) {
    base.validate();
    if (base.n_spins < 3)
        throw validation_error("bulk_temperature_sweep: requires N >= 3");
    if (tb_grid.empty() || kb_grid.empty())
        throw validation_error("bulk_temperature_sweep: empty grid");
    std::vector<BulkSweepRow> rows(tb_grid.size() * kb_grid.size());
    detail::parallel_for(static_cast<int>(rows.size()), workers, [&](int idx) {
        const double tb = tb_grid[idx / kb_grid.size()];
        const double kb = kb_grid[idx % kb_grid.size()];
        ChainSpec spec = base;
        for (int mu = 2; mu < spec.n_spins; ++mu) {
            spec.temperature[mu - 1] = tb;
            spec.dissipation_rate[mu - 1] = kb;
        }
        try {
            const ChainSolution sol = solve_chain(spec);
            const auto report =
                heat_currents(spec, sol.channels, sol.rate_matrix, sol.steady.populations);
            rows[idx] = {tb, kb, report.per_reservoir, sol.steady.residual_norm};
        } catch (const std::runtime_error& e) {
            throw numeric_error("sweep point T_b=" + std::to_string(tb) +
                                " kappa_b=" + std::to_string(kb) + ": " + e.what());
        }
    });
    return rows;
}

}  // namespace spinlind
