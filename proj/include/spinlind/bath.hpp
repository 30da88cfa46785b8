#pragma once

#include <cmath>

#include "spinlind/errors.hpp"

namespace spinlind {

// Bose-Einstein occupation n(omega) = 1/(exp(omega/T) - 1), with guarded
// branches for extreme omega/T ratios so sweeps over T in [2,10] and
// omega ~ 10 stay overflow-free.
inline double bose_occupation(double omega, double temperature) {
    if (omega <= 0) throw argument_error("bose_occupation: omega must be > 0");
    if (temperature <= 0) throw argument_error("bose_occupation: temperature must be > 0");
    const double x = omega / temperature;
    if (x > 700.0) return std::exp(-x);
    if (x < 1e-8) return 1.0 / x - 0.5 + x / 12.0;
    return 1.0 / std::expm1(x);
}

// Flat-spectrum transition rates for one channel frequency: the upward rate
// kappa*n and downward rate kappa*(n+1); their difference is kappa exactly and
// their ratio obeys detailed balance exp(-omega/T).
struct BathRates {
    double upward = 0.0;    // J(+omega) = kappa * n(omega)
    double downward = 0.0;  // J(-omega) = kappa * (n(omega) + 1)
    double omega = 0.0;
    double temperature = 0.0;
};

inline BathRates bath_rates(double omega, double kappa, double temperature) {
    if (kappa < 0) throw argument_error("bath_rates: kappa must be >= 0");
    if (kappa == 0.0) return {0.0, 0.0, omega, temperature};
    const double n = bose_occupation(omega, temperature);
    return {kappa * n, kappa * (n + 1.0), omega, temperature};
}

}  // namespace spinlind
