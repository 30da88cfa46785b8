#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinlind/errors.hpp"

namespace spinlind {

// Spins are indexed 1..N. Bare basis states are indexed 1..2^N with bit
// decomposition value = 1 + sum_mu b_mu * 2^(N-mu); bit b_mu = 0 means spin mu
// is excited (sigma^z eigenvalue +1), so index 1 is the all-excited state.
// Flipping spin mu moves a bare index by exactly 2^(N-mu).

inline int bare_dim(int n_spins) { return 1 << n_spins; }

inline int bit_stride(int mu, int n_spins) { return 1 << (n_spins - mu); }

// sigma^z eigenvalue (+1 excited / -1 ground) of spin mu in bare state i (1-based).
inline int spin_sign(int bare_index, int mu, int n_spins) {
    return ((bare_index - 1) >> (n_spins - mu)) & 1 ? -1 : +1;
}

// C(mu,N): bare indices whose partner under a spin-mu flip sits at i + 2^(N-mu).
inline std::vector<int> index_set(int mu, int n_spins) {
    if (n_spins < 1) throw argument_error("index_set: n_spins must be >= 1");
    if (mu < 1 || mu > n_spins)
        throw argument_error("index_set: spin index " + std::to_string(mu) +
                             " out of range [1," + std::to_string(n_spins) + "]");
    const int stride = bit_stride(mu, n_spins);
    std::vector<int> out;
    out.reserve(bare_dim(n_spins) / 2);
    for (int i = 1; i <= bare_dim(n_spins); ++i)
        if ((((i - 1) / stride) % 2) == 0) out.push_back(i);
    return out;
}

// Full physical description of the open chain. Units: hbar = k_B = 1, B_0 = 1.
struct ChainSpec {
    int n_spins = 0;
    std::vector<double> field_magnitude;   // |B_mu| >= 0
    std::vector<double> field_angle;       // theta_mu in [0, pi/2]; 0 = longitudinal
    std::vector<double> coupling;          // J_{mu,mu+1}, length N-1
    std::vector<double> dissipation_rate;  // kappa_mu >= 0
    std::vector<double> temperature;       // T_mu > 0 where kappa_mu > 0

    double bx(int mu) const { return field_magnitude[mu - 1] * std::sin(field_angle[mu - 1]); }
    double bz(int mu) const { return field_magnitude[mu - 1] * std::cos(field_angle[mu - 1]); }

    bool is_longitudinal() const {
        for (double th : field_angle)
            if (th != 0.0) return false;
        return true;
    }
    bool is_transverse() const {
        for (double th : field_angle)
            if (std::abs(th - std::asin(1.0)) > 1e-15) return false;
        return true;
    }

    void validate() const {
        const std::size_t n = static_cast<std::size_t>(n_spins);
        if (n_spins < 1) throw validation_error("ChainSpec: n_spins must be positive");
        if (field_magnitude.size() != n || field_angle.size() != n ||
            dissipation_rate.size() != n || temperature.size() != n)
            throw validation_error("ChainSpec: per-spin array length inconsistent with n_spins");
        if (coupling.size() != n - 1)
            throw validation_error("ChainSpec: coupling must have length n_spins-1");
        for (int mu = 1; mu <= n_spins; ++mu) {
            if (field_magnitude[mu - 1] < 0)
                throw validation_error("ChainSpec: field_magnitude must be >= 0");
            if (dissipation_rate[mu - 1] < 0)
                throw validation_error("ChainSpec: dissipation_rate must be >= 0");
            if (dissipation_rate[mu - 1] > 0 && temperature[mu - 1] <= 0)
                throw validation_error("ChainSpec: temperature must be > 0 for dissipative spin " +
                                       std::to_string(mu));
            const double b2 = bx(mu) * bx(mu) + bz(mu) * bz(mu);
            const double m2 = field_magnitude[mu - 1] * field_magnitude[mu - 1];
            if (std::abs(b2 - m2) > 1e-12 * std::max(1.0, m2))
                throw validation_error("ChainSpec: field decomposition inconsistent");
        }
    }

    // FNV-1a over the raw parameter bytes; used for provenance checks.
    std::uint64_t hash() const {
        std::uint64_t h = 14695981039346656037ull;
        auto mix = [&h](const void* p, std::size_t len) {
            const auto* b = static_cast<const unsigned char*>(p);
            for (std::size_t i = 0; i < len; ++i) {
                h ^= b[i];
                h *= 1099511628211ull;
            }
        };
        mix(&n_spins, sizeof(n_spins));
        for (const auto* v : {&field_magnitude, &field_angle, &coupling,
                              &dissipation_rate, &temperature})
            if (!v->empty()) mix(v->data(), v->size() * sizeof(double));
        return h;
    }
};

// H_S in the bare basis, Eq. form (1/2)(sum B^x sx + B^z sz + sum J sz sz).
inline Eigen::MatrixXd build_hamiltonian(const ChainSpec& spec) {
    spec.validate();
    const int n = spec.n_spins;
    if (n > 12) throw capacity_error("build_hamiltonian: dense path limited to N <= 12");
    const int dim = bare_dim(n);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 1; i <= dim; ++i) {
        double diag = 0.0;
        for (int mu = 1; mu <= n; ++mu) diag += spec.bz(mu) * spin_sign(i, mu, n);
        for (int mu = 1; mu < n; ++mu)
            diag += spec.coupling[mu - 1] * spin_sign(i, mu, n) * spin_sign(i, mu + 1, n);
        h(i - 1, i - 1) = 0.5 * diag;
        for (int mu = 1; mu <= n; ++mu) {
            const double bx = spec.bx(mu);
            if (bx == 0.0) continue;
            const int j = ((i - 1) ^ bit_stride(mu, n)) + 1;
            h(i - 1, j - 1) += 0.5 * bx;
        }
    }
    return h;
}

// Cooper-pair-box parameters mapped onto an effective field direction.
struct CircuitParams {
    double charging_energy = 0.0;   // E_C > 0
    double josephson_energy = 0.0;  // E_J >= 0
    double gate_charge = 0.0;       // N_g, dimensionless

    void validate() const {
        if (charging_energy <= 0) throw validation_error("CircuitParams: E_C must be > 0");
        if (josephson_energy < 0) throw validation_error("CircuitParams: E_J must be >= 0");
    }
};

struct FieldVector {
    double magnitude;
    double angle;
};

// B^z = 2 E_C (1 - 2 N_g), B^x = E_J / 2.
inline FieldVector circuit_to_field(const CircuitParams& p) {
    p.validate();
    const double bz = 2.0 * p.charging_energy * (1.0 - 2.0 * p.gate_charge);
    const double bx = p.josephson_energy / 2.0;
    if (bx == 0.0 && bz == 0.0)
        throw argument_error("circuit_to_field: degenerate field (B^x = B^z = 0)");
    return {std::hypot(bx, bz), std::atan2(bx, bz)};
}

}  // namespace spinlind
