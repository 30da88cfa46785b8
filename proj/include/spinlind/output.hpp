#pragma once

// Deterministic CSV/JSON emission: fixed float formatting (17 significant
// digits, round-trip exact for doubles) and fixed row order, so repeated runs
// of the same configuration produce byte-identical artifacts.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinlind/kinetics.hpp"
#include "spinlind/spectral.hpp"
#include "spinlind/transport.hpp"

namespace spinlind {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- solve -----------------------------------------------------------------

inline nlohmann::ordered_json solve_report_json(const SteadyStateSolution& sol) {
    nlohmann::ordered_json j;
    j["populations"] = std::vector<double>(sol.populations.data(),
                                           sol.populations.data() + sol.populations.size());
    j["nullspace_dim"] = sol.nullspace_dim;
    j["component_fractions"] = sol.component_fractions;
    j["residual_norm"] = sol.residual_norm;
    return j;
}

// ---- spectrum --------------------------------------------------------------

// Two CSV sections: eigenlevels, then channels, separated by a blank line.
inline void write_spectrum_csv(std::ostream& os, const EigenSystem& es,
                               const ChannelSet& channels) {
    os << "level,eigenvalue\n";
    for (int i = 0; i < es.dim(); ++i)
        os << (i + 1) << ',' << format_double(es.eigenvalues(i)) << '\n';
    os << '\n';
    os << "mu,lower,upper,omega,coeff\n";
    for (const auto& c : channels.channels)
        os << c.reservoir << ',' << c.lower << ',' << c.upper << ','
           << format_double(c.omega) << ',' << format_double(c.coefficient) << '\n';
}

inline nlohmann::ordered_json spectrum_json(const EigenSystem& es,
                                            const ChannelSet& channels) {
    nlohmann::ordered_json j;
    j["levels"] = nlohmann::ordered_json::array();
    for (int i = 0; i < es.dim(); ++i)
        j["levels"].push_back({{"level", i + 1}, {"eigenvalue", es.eigenvalues(i)}});
    j["channels"] = nlohmann::ordered_json::array();
    for (const auto& c : channels.channels)
        j["channels"].push_back({{"mu", c.reservoir},
                                 {"lower", c.lower},
                                 {"upper", c.upper},
                                 {"omega", c.omega},
                                 {"coeff", c.coefficient}});
    return j;
}

// ---- sweeps ----------------------------------------------------------------

// One row per (grid point, reservoir), grid order then reservoir order.
inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, int n) {
    os << "theta_or_Tb,N,mu,Q_mu,residual\n";
    for (const auto& row : rows)
        for (int mu = 1; mu <= n; ++mu)
            os << format_double(row.parameter) << ',' << n << ',' << mu << ','
               << format_double(row.currents[mu - 1]) << ','
               << format_double(row.residual) << '\n';
}

inline nlohmann::ordered_json sweep_json(const std::vector<SweepRow>& rows, int n) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& row : rows)
        for (int mu = 1; mu <= n; ++mu)
            j.push_back({{"theta_or_Tb", row.parameter},
                         {"N", n},
                         {"mu", mu},
                         {"Q_mu", row.currents[mu - 1]},
                         {"residual", row.residual}});
    return j;
}

}  // namespace spinlind
