#pragma once

// Shared fixtures for the test suite: random chain generation and
// label-based lookups against the ascending-eigenvalue numeric ordering.

#include <random>
#include <string>

#include "spinlind/spinlind.hpp"

namespace testutil {

using namespace spinlind;

inline double log_uniform(std::mt19937& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

// Draw ranges follow the verification convention: B in [1,10], J in
// [0.05,1], kappa in [1e-4,1e-2], T in [1,20], all log-uniform.
inline ChainSpec random_spec(std::mt19937& rng, int n, double theta_lo = 0.0,
                             double theta_hi = 0.0) {
    ChainSpec s;
    s.n_spins = n;
    std::uniform_real_distribution<double> angle(theta_lo, theta_hi);
    for (int i = 0; i < n; ++i) {
        s.field_magnitude.push_back(log_uniform(rng, 1.0, 10.0));
        s.field_angle.push_back(theta_lo == theta_hi ? theta_lo : angle(rng));
        s.dissipation_rate.push_back(log_uniform(rng, 1e-4, 1e-2));
        s.temperature.push_back(log_uniform(rng, 1.0, 20.0));
    }
    for (int i = 0; i + 1 < n; ++i) s.coupling.push_back(log_uniform(rng, 0.05, 1.0));
    return s;
}

inline double population_by_label(const ChainSolution& sol, const std::string& labels) {
    const int level = oracle::eigenlevel_of_bare(
        sol.eigensystem, oracle::bare_index_from_states(labels));
    return sol.steady.populations(level - 1);
}

// Initial populations placed uniformly inside the component containing the
// given bare product state.
inline Eigen::VectorXd component_initial(const EigenSystem& es,
                                         const SubspaceDecomposition& dec,
                                         const std::string& labels) {
    const int m = dec.component_of(
        oracle::eigenlevel_of_bare(es, oracle::bare_index_from_states(labels)));
    Eigen::VectorXd p = Eigen::VectorXd::Zero(es.dim());
    for (int l : dec.components[m]) p(l - 1) = 1.0 / dec.components[m].size();
    return p;
}

}  // namespace testutil
