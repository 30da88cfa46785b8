#pragma once

// Closed-form reference results for small longitudinal-field chains and for
// the channel frequencies of three-spin chains under mixed field directions.
// The polynomial forms are transcribed literally, without simplification, so
// a mismatch against the numeric pipeline pinpoints a transcription or
// pipeline bug rather than a rearrangement rounding difference.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "spinlind/bath.hpp"
#include "spinlind/errors.hpp"
#include "spinlind/model.hpp"
#include "spinlind/spectral.hpp"

namespace spinlind::oracle {

// 1-based bare index of a product state given per-spin states, spin 1 first;
// 'e' = excited, 'g' = ground.
inline int bare_index_from_states(const std::string& states) {
    const int n = static_cast<int>(states.size());
    int idx = 1;
    for (int mu = 1; mu <= n; ++mu) {
        const char c = states[mu - 1];
        if (c == 'g') idx += bit_stride(mu, n);
        else if (c != 'e')
            throw argument_error("bare_index_from_states: states must be 'e'/'g'");
    }
    return idx;
}

// Eigenlevel with the dominant overlap on a bare state (1-based both ways).
// For longitudinal fields the eigenbasis is a permutation of the bare basis,
// so this inverts the level reordering exactly.
inline int eigenlevel_of_bare(const EigenSystem& es, int bare) {
    if (bare < 1 || bare > es.dim())
        throw argument_error("eigenlevel_of_bare: index out of range");
    int best = 1;
    double bestv = -1.0;
    for (int i = 1; i <= es.dim(); ++i) {
        const double v = std::abs(es.lambda_matrix(i - 1, bare - 1));
        if (v > bestv) { bestv = v; best = i; }
    }
    return best;
}

struct ThermalPair {
    double ground = 1.0;
    double excited = 0.0;
};

// Spectral-density pair (J^+, J^-) for a signed frequency: a negative
// effective frequency swaps the roles of excitation and decay via the
// identity n(-w) = -(n(w)+1).
inline std::pair<double, double> signed_rates(double omega, double kappa,
                                              double temperature) {
    if (omega == 0.0) throw argument_error("signed_rates: zero frequency");
    const BathRates r = bath_rates(std::abs(omega), kappa, temperature);
    if (omega > 0) return {r.upward, r.downward};
    return {r.downward, r.upward};
}

// Single dissipative spin at frequency omega: rho_g = (n+1)/(2n+1).
inline ThermalPair thermal_single(double omega, double temperature) {
    const double n = bose_occupation(omega, temperature);
    return {(n + 1.0) / (2.0 * n + 1.0), n / (2.0 * n + 1.0)};
}

// ---------------------------------------------------------------------------
// Two-spin chain, both spins dissipative, longitudinal fields.
// ---------------------------------------------------------------------------

struct TwoSpinClosedForm {
    double coupling = 0.0;
    // spectral densities J_{mu l}^{+/-}; first index spin (0,1), second the
    // channel l (0: omega = B - J, 1: omega = B + J)
    double jp[2][2] = {{0, 0}, {0, 0}};
    double jm[2][2] = {{0, 0}, {0, 0}};
    double rho_unnorm[4] = {0, 0, 0, 0};  // gg, ge, eg, ee (spin 1 first)
    double normalizer = 0.0;
    double gamma12 = 0.0;

    std::array<double, 4> populations() const {
        return {rho_unnorm[0] / normalizer, rho_unnorm[1] / normalizer,
                rho_unnorm[2] / normalizer, rho_unnorm[3] / normalizer};
    }
    double q1() const { return -2.0 * coupling * gamma12; }
    double q2() const { return -q1(); }
};

inline TwoSpinClosedForm two_spin_closed_form(double b1, double b2, double j,
                                              double kappa1, double kappa2, double t1,
                                              double t2) {
    if (kappa1 <= 0 || kappa2 <= 0)
        throw argument_error("two_spin_closed_form: both spins must be dissipative");
    TwoSpinClosedForm f;
    f.coupling = j;
    const double w[2][2] = {{b1 - j, b1 + j}, {b2 - j, b2 + j}};
    const double kap[2] = {kappa1, kappa2};
    const double tt[2] = {t1, t2};
    for (int mu = 0; mu < 2; ++mu)
        for (int l = 0; l < 2; ++l) {
            const auto [up, down] = signed_rates(w[mu][l], kap[mu], tt[mu]);
            f.jp[mu][l] = up;
            f.jm[mu][l] = down;
        }
    const double J11p = f.jp[0][0], J11m = f.jm[0][0], J12p = f.jp[0][1], J12m = f.jm[0][1];
    const double J21p = f.jp[1][0], J21m = f.jm[1][0], J22p = f.jp[1][1], J22m = f.jm[1][1];
    f.rho_unnorm[0] = J11m * J12m * J21m + J11m * J12p * J22m + J11m * J21m * J22m +
                      J12m * J21m * J22p;
    f.rho_unnorm[1] = J11m * J12m * J21p + J11p * J12m * J22p + J11m * J21p * J22m +
                      J12m * J21p * J22p;
    f.rho_unnorm[2] = J11p * J12m * J21m + J11p * J12p * J22m + J11p * J21m * J22m +
                      J12p * J21p * J22m;
    f.rho_unnorm[3] = J11m * J12p * J21p + J11p * J12p * J22p + J11p * J21m * J22p +
                      J12p * J21p * J22p;
    f.normalizer = f.rho_unnorm[0] + f.rho_unnorm[1] + f.rho_unnorm[2] + f.rho_unnorm[3];
    f.gamma12 = (2.0 / f.normalizer) *
                (J11p * J12m * J21m * J22p - J11m * J12p * J21p * J22m);
    return f;
}

inline TwoSpinClosedForm two_spin_steady(const ChainSpec& spec) {
    spec.validate();
    if (spec.n_spins != 2) throw argument_error("two_spin_steady: requires N = 2");
    if (!spec.is_longitudinal())
        throw argument_error("two_spin_steady: requires longitudinal fields");
    return two_spin_closed_form(spec.field_magnitude[0], spec.field_magnitude[1],
                                spec.coupling[0], spec.dissipation_rate[0],
                                spec.dissipation_rate[1], spec.temperature[0],
                                spec.temperature[1]);
}

// ---------------------------------------------------------------------------
// Symmetric three-spin chain: T1 = T3, equal fields, equal couplings,
// kappa1 = kappa3.
// ---------------------------------------------------------------------------

struct ThreeSpinSymmetricClosedForm {
    double coupling = 0.0;
    double omega_n1 = 0.0, omega_n2 = 0.0;               // nodal: B - J, B + J
    double omega_b1 = 0.0, omega_b2 = 0.0, omega_b3 = 0.0;  // bulk: B - 2J, B, B + 2J
    // order: ggg, gge, geg, gee, egg, ege, eeg, eee (spin 1 first)
    double rho_unnorm[8] = {0};
    double normalizer = 0.0;
    double gamma1 = 0.0, gamma2 = 0.0, gamma3 = 0.0;

    std::array<double, 8> populations() const {
        std::array<double, 8> p{};
        for (int i = 0; i < 8; ++i) p[i] = rho_unnorm[i] / normalizer;
        return p;
    }
    double q1() const { return -2.0 * coupling * (gamma1 + gamma2); }
    double q3() const { return q1(); }
    double q2() const { return -2.0 * q1(); }
};

inline ThreeSpinSymmetricClosedForm three_spin_symmetric_steady(const ChainSpec& spec) {
    spec.validate();
    if (spec.n_spins != 3)
        throw argument_error("three_spin_symmetric_steady: requires N = 3");
    if (!spec.is_longitudinal())
        throw argument_error("three_spin_symmetric_steady: requires longitudinal fields");
    const double b = spec.field_magnitude[0], j = spec.coupling[0];
    if (spec.field_magnitude[1] != b || spec.field_magnitude[2] != b ||
        spec.coupling[1] != j || spec.temperature[0] != spec.temperature[2] ||
        spec.dissipation_rate[0] != spec.dissipation_rate[2])
        throw argument_error(
            "three_spin_symmetric_steady: requires equal fields and couplings, "
            "T1 = T3, kappa1 = kappa3");
    if (spec.dissipation_rate[0] <= 0 || spec.dissipation_rate[1] <= 0)
        throw argument_error("three_spin_symmetric_steady: all spins must be dissipative");
    ThreeSpinSymmetricClosedForm f;
    f.coupling = j;
    f.omega_n1 = b - j;
    f.omega_n2 = b + j;
    f.omega_b1 = b - 2.0 * j;
    f.omega_b2 = b;
    f.omega_b3 = b + 2.0 * j;
    const double kn = spec.dissipation_rate[0], tn = spec.temperature[0];
    const double kb = spec.dissipation_rate[1], tb = spec.temperature[1];
    const auto [Jn1p, Jn1m] = signed_rates(f.omega_n1, kn, tn);
    const auto [Jn2p, Jn2m] = signed_rates(f.omega_n2, kn, tn);
    const auto [Jb1p, Jb1m] = signed_rates(f.omega_b1, kb, tb);
    const auto [Jb2p, Jb2m] = signed_rates(f.omega_b2, kb, tb);
    const auto [Jb3p, Jb3m] = signed_rates(f.omega_b3, kb, tb);

    const double r_ggg =
        Jb1m * ((Jb2m * Jn1m + Jb2p * Jn2m) * (Jb3m * Jn1m + Jb3p * Jn2m) +
                Jb3m * Jn1m * Jn1m * (Jn2p + Jn2m) +
                Jb3p * Jn2m * Jn2m * (Jn1p + Jn1m)) +
        2.0 * Jn1m *
            (Jb1m * Jn2m * (Jb2m * Jn1m + Jb2p * Jn2m) +
             Jb2m * Jn2p * (Jb3m * Jn1m + Jb3p * Jn2m) +
             Jn1m * (Jb1m * Jn2m * Jn2m + Jb3m * Jn2p * Jn2p +
                     2.0 * Jb2m * Jn2p * Jn2m));
    const double r_gge =
        Jb2m * (Jb1m * Jn1p + Jb1p * Jn2p) * (Jb3m * Jn1m + Jb3p * Jn2m) +
        Jb1m * Jn1p * Jn2m * (Jb3m * Jn1m + Jb3p * Jn2m) +
        Jb3m * Jn1m * Jn2p * (Jb1m * Jn1p + Jb1p * Jn2p) +
        2.0 * Jb2m *
            (Jn1m * Jn1p * (Jb1m * Jn2m + Jb3m * Jn2p) +
             Jn2m * Jn2p * (Jb1p * Jn1m + Jb3p * Jn1p)) +
        2.0 * Jn1m * Jn1p *
            (Jb3m * Jn2p * Jn2p + Jb1m * Jn2m * Jn2m + 2.0 * Jb2m * Jn2m * Jn2p);
    const double r_geg =
        Jb1p * ((Jb2m * Jn1m + Jb2p * Jn2m) * (Jb3m * Jn1m + Jb3p * Jn2m) +
                Jb3m * Jn1m * Jn1m * (Jn2p + Jn2m) +
                Jb3p * Jn2m * Jn2m * (Jn1p + Jn1m)) +
        2.0 * Jn2m *
            (Jb1p * Jn1m * (Jb2m * Jn1m + Jb2p * Jn2m) +
             Jb2p * Jn1p * (Jb3m * Jn1m + Jb3p * Jn2m) +
             Jn2m * (Jb1p * Jn1m * Jn1m + Jb3p * Jn1p * Jn1p +
                     2.0 * Jb2p * Jn1p * Jn1m));
    const double r_gee =
        Jb2p * (Jb1m * Jn1p + Jb1p * Jn2p) * (Jb3m * Jn1m + Jb3p * Jn2m) +
        Jb1p * Jn1m * Jn2p * (Jb3m * Jn1m + Jb3p * Jn2m) +
        Jb3p * Jn1p * Jn2m * (Jb1m * Jn1p + Jb1p * Jn2p) +
        2.0 * Jb2p *
            (Jn1m * Jn2m * (Jb1m * Jn1p + Jb1p * Jn2p) +
             Jn1p * Jn2p * (Jb3p * Jn2m + Jb3m * Jn1m)) +
        2.0 * Jn2p * Jn2m *
            (Jb1p * Jn1m * Jn1m + Jb3p * Jn1p * Jn1p + 2.0 * Jb2p * Jn1p * Jn1m);
    const double r_ege =
        Jb3m * ((Jb1m * Jn1p + Jb1p * Jn2p) * (Jb2m * Jn1p + Jb2p * Jn2p) +
                Jb1m * Jn1p * Jn1p * (Jn2m + Jn2p) +
                Jb1p * Jn2p * Jn2p * (Jn1p + Jn1m)) +
        2.0 * Jn1p *
            (Jb2m * Jn2m * (Jb1m * Jn1p + Jb1p * Jn2p) +
             Jb3m * Jn2p * (Jb2m * Jn1p + Jb2p * Jn2p) +
             Jn1p * (Jb1m * Jn2m * Jn2m + Jb3m * Jn2p * Jn2p +
                     2.0 * Jb2m * Jn2p * Jn2m));
    const double r_eee =
        Jb3p * ((Jb1m * Jn1p + Jb1p * Jn2p) * (Jb2m * Jn1p + Jb2p * Jn2p) +
                Jb1m * Jn1p * Jn1p * (Jn2m + Jn2p) +
                Jb1p * Jn2p * Jn2p * (Jn1p + Jn1m)) +
        2.0 * Jn2p *
            (Jb2p * Jn1m * (Jb1m * Jn1p + Jb1p * Jn2p) +
             Jb3p * Jn1p * (Jb2m * Jn1p + Jb2p * Jn2p) +
             Jn2p * (Jb1p * Jn1m * Jn1m + Jb3p * Jn1p * Jn1p +
                     2.0 * Jb2p * Jn1p * Jn1m));
    const double r_egg = r_gge;  // mirror symmetry of the printed forms
    const double r_eeg = r_gee;

    const double rr[8] = {r_ggg, r_gge, r_geg, r_gee, r_egg, r_ege, r_eeg, r_eee};
    f.normalizer = 0.0;
    for (int i = 0; i < 8; ++i) {
        f.rho_unnorm[i] = rr[i];
        f.normalizer += rr[i];
    }
    f.gamma1 = (2.0 / f.normalizer) *
               ((Jb3m * Jn1m + Jb3p * Jn2m + 2.0 * Jn1m * Jn2m) *
                    (Jb1m * Jb2p * Jn1p * Jn2m - Jb1p * Jb2m * Jn1m * Jn2p) +
                Jb1m * Jb3p * Jn1p * Jn1p * Jn2m * Jn2m -
                Jb1p * Jb3m * Jn1m * Jn1m * Jn2p * Jn2p);
    f.gamma2 = (2.0 / f.normalizer) *
               ((Jb1p * Jn2p + Jb1m * Jn1p + 2.0 * Jn1p * Jn2p) *
                    (Jb2m * Jb3p * Jn1p * Jn2m - Jb2p * Jb3m * Jn1m * Jn2p) +
                Jb1m * Jb3p * Jn1p * Jn1p * Jn2m * Jn2m -
                Jb1p * Jb3m * Jn1m * Jn1m * Jn2p * Jn2p);
    f.gamma3 = f.gamma1 - f.gamma2;
    return f;
}

// ---------------------------------------------------------------------------
// Three-spin chain with a non-dissipative middle spin: product thermal state
// at frequencies shifted by the frozen middle-spin state, zero currents.
// ---------------------------------------------------------------------------

struct BlockedThreeSpin {
    char middle_state = 'g';  // 'g' or 'e'
    double omega1 = 0.0;      // B1 -/+ J12
    double omega3 = 0.0;      // B3 -/+ J23
    // order within the subspace: 1g3g, 1g3e, 1e3g, 1e3e
    std::array<double, 4> populations{};
};

inline BlockedThreeSpin blocked_three_spin(const ChainSpec& spec, char middle_state) {
    spec.validate();
    if (spec.n_spins != 3) throw argument_error("blocked_three_spin: requires N = 3");
    if (!spec.is_longitudinal())
        throw argument_error("blocked_three_spin: requires longitudinal fields");
    if (spec.dissipation_rate[1] != 0.0)
        throw argument_error("blocked_three_spin: middle spin must be non-dissipative");
    if (spec.dissipation_rate[0] <= 0 || spec.dissipation_rate[2] <= 0)
        throw argument_error("blocked_three_spin: nodal spins must be dissipative");
    if (middle_state != 'g' && middle_state != 'e')
        throw argument_error("blocked_three_spin: middle_state must be 'g' or 'e'");
    const double s = (middle_state == 'e') ? +1.0 : -1.0;
    BlockedThreeSpin b;
    b.middle_state = middle_state;
    b.omega1 = spec.field_magnitude[0] + s * spec.coupling[0];
    b.omega3 = spec.field_magnitude[2] + s * spec.coupling[1];
    const ThermalPair p1 = thermal_single(b.omega1, spec.temperature[0]);
    const ThermalPair p3 = thermal_single(b.omega3, spec.temperature[2]);
    b.populations = {p1.ground * p3.ground, p1.ground * p3.excited,
                     p1.excited * p3.ground, p1.excited * p3.excited};
    return b;
}

// ---------------------------------------------------------------------------
// Seven-spin chain with spins 3 and 6 non-dissipative: each subspace is the
// product of two dissipative 2-spin chains at shifted fields plus a thermal
// spin 7, so the currents compose from the 2-spin closed form.
// ---------------------------------------------------------------------------

struct SevenSpinSubchainCurrents {
    char state3 = 'g', state6 = 'g';
    TwoSpinClosedForm chain12;  // spins (1,2), spin 2 field shifted by spin 3
    TwoSpinClosedForm chain45;  // spins (4,5), fields shifted by spins 3 and 6
    double omega7 = 0.0;        // spin 7 thermal frequency, B7 -/+ J67
    std::array<double, 7> per_reservoir{};
};

inline SevenSpinSubchainCurrents seven_spin_subchain_currents(const ChainSpec& spec,
                                                              char state3, char state6) {
    spec.validate();
    if (spec.n_spins != 7)
        throw argument_error("seven_spin_subchain_currents: requires N = 7");
    if (!spec.is_longitudinal())
        throw argument_error("seven_spin_subchain_currents: requires longitudinal fields");
    if (spec.dissipation_rate[2] != 0.0 || spec.dissipation_rate[5] != 0.0)
        throw argument_error(
            "seven_spin_subchain_currents: spins 3 and 6 must be non-dissipative");
    for (int mu : {1, 2, 4, 5, 7})
        if (spec.dissipation_rate[mu - 1] <= 0)
            throw argument_error(
                "seven_spin_subchain_currents: remaining spins must be dissipative");
    auto sign = [](char c) {
        if (c != 'g' && c != 'e')
            throw argument_error("seven_spin_subchain_currents: states must be 'g' or 'e'");
        return c == 'e' ? +1.0 : -1.0;
    };
    const double s3 = sign(state3), s6 = sign(state6);
    SevenSpinSubchainCurrents out;
    out.state3 = state3;
    out.state6 = state6;
    const auto& B = spec.field_magnitude;
    const auto& J = spec.coupling;
    out.chain12 = two_spin_closed_form(B[0], B[1] + s3 * J[1], J[0],
                                       spec.dissipation_rate[0], spec.dissipation_rate[1],
                                       spec.temperature[0], spec.temperature[1]);
    out.chain45 = two_spin_closed_form(B[3] + s3 * J[2], B[4] + s6 * J[4], J[3],
                                       spec.dissipation_rate[3], spec.dissipation_rate[4],
                                       spec.temperature[3], spec.temperature[4]);
    out.omega7 = B[6] + s6 * J[5];
    out.per_reservoir = {out.chain12.q1(), out.chain12.q2(), 0.0,
                         out.chain45.q1(), out.chain45.q2(), 0.0, 0.0};
    return out;
}

// ---------------------------------------------------------------------------
// Expected channel frequencies of a three-spin chain, by per-spin field
// pattern. Tag characters: 'L' longitudinal, 'T' transverse, spin 1 first.
// ---------------------------------------------------------------------------

struct FrequencyTable {
    std::string tag;
    std::array<std::vector<double>, 3> per_reservoir;  // sorted ascending
    // false when the closed form fixes only the frequencies, not the channel
    // coefficients (patterns TTL, LTT)
    bool coefficients_available = true;
};

inline std::array<double, 3> pattern_angles(const std::string& tag) {
    if (tag.size() != 3) throw argument_error("pattern_angles: tag must have 3 characters");
    std::array<double, 3> th{};
    for (int i = 0; i < 3; ++i) {
        if (tag[i] == 'L') th[i] = 0.0;
        else if (tag[i] == 'T') th[i] = std::asin(1.0);
        else throw argument_error("pattern_angles: tag characters must be 'L' or 'T'");
    }
    return th;
}

inline FrequencyTable closed_form_frequencies(const std::string& tag,
                                              const std::array<double, 3>& b,
                                              const std::array<double, 2>& j) {
    pattern_angles(tag);  // validates the tag characters
    const double b1 = b[0], b2 = b[1], b3 = b[2], j12 = j[0], j23 = j[1];
    FrequencyTable t;
    t.tag = tag;
    auto& fr = t.per_reservoir;
    if (tag == "LLL") {
        fr[0] = {b1 - j12, b1 + j12};
        fr[1] = {b2 - j12 - j23, b2 - j12 + j23, b2 + j12 - j23, b2 + j12 + j23};
        fr[2] = {b3 - j23, b3 + j23};
    } else if (tag == "TLL") {
        const double w1 = std::sqrt(b1 * b1 + j12 * j12);
        const double op = w1 + j23, om = w1 - j23;
        fr[0] = {w1};
        fr[1] = {b2 + j23, b2 - j23, op + b2, op - b2, om + b2, om - b2};
        fr[2] = {b3 - j23, b3 + j23};
    } else if (tag == "LTL") {
        const double op = std::sqrt(b2 * b2 + (j12 + j23) * (j12 + j23));
        const double om = std::sqrt(b2 * b2 + (j12 - j23) * (j12 - j23));
        fr[0] = {b1 + 0.5 * (op - om), b1 + 0.5 * (op + om), b1 - 0.5 * (op - om),
                 b1 - 0.5 * (op + om)};
        fr[1] = {op, om};
        fr[2] = {b3 + 0.5 * (op - om), b3 + 0.5 * (op + om), b3 - 0.5 * (op - om),
                 b3 - 0.5 * (op + om)};
    } else if (tag == "LLT") {
        const double w3 = std::sqrt(b3 * b3 + j23 * j23);
        const double op = w3 + j12, om = w3 - j12;
        fr[0] = {b1 - j12, b1 + j12};
        fr[1] = {b2 + j12, b2 - j12, b2 + op, b2 + om, b2 - om, b2 - op};
        fr[2] = {w3};
    } else if (tag == "TLT") {
        const double u = b1 * b1 + j12 * j12, v = b3 * b3 + j23 * j23;
        const double Op = std::sqrt(u + v + 2.0 * std::sqrt(u * v));
        const double Om = std::sqrt(u + v - 2.0 * std::sqrt(u * v));
        // (Op -/+ Om)/2 equals min/max(sqrt(u), sqrt(v)); the nodal spins'
        // own gaps are sqrt(u) and sqrt(v) regardless of which is larger
        fr[0] = {std::sqrt(u)};
        fr[1] = {b2,
                 b2 + 0.5 * (Op + Om), b2 - 0.5 * (Op + Om),
                 b2 + Op, b2 - Om,
                 b2 + 0.5 * (Op - Om), -b2 + 0.5 * (Op - Om),
                 -b2 + Op, -b2 - Om};
        fr[2] = {std::sqrt(v)};
    } else if (tag == "TTL") {
        const double s = std::sqrt(b1 * b1 * b2 * b2 + j23 * j23 * (b1 * b1 + j12 * j12));
        const double base = b1 * b1 + b2 * b2 + j12 * j12 + j23 * j23;
        const double Op = std::sqrt(base + 2.0 * s), Om = std::sqrt(base - 2.0 * s);
        fr[0] = {0.5 * (Op - Om), 0.5 * (Op + Om), Op, Om};
        fr[1] = fr[0];
        fr[2] = {b3 + 0.5 * (Op - Om), b3 - 0.5 * (Op - Om), b3 + 0.5 * (Op + Om),
                 b3 - 0.5 * (Op + Om), b3};
        t.coefficients_available = false;
    } else if (tag == "LTT") {
        const double s = std::sqrt(b2 * b2 * b3 * b3 + j12 * j12 * (b3 * b3 + j23 * j23));
        const double base = b2 * b2 + b3 * b3 + j12 * j12 + j23 * j23;
        const double Op = std::sqrt(base + 2.0 * s), Om = std::sqrt(base - 2.0 * s);
        fr[0] = {b1, b1 + 0.5 * (Op - Om), b1 - 0.5 * (Op - Om), b1 + 0.5 * (Op + Om),
                 b1 - 0.5 * (Op + Om)};
        fr[1] = {0.5 * (Op - Om), 0.5 * (Op + Om), Op, Om};
        fr[2] = fr[1];
        t.coefficients_available = false;
    } else {
        throw argument_error("closed_form_frequencies: unsupported pattern " + tag);
    }
    // transition frequencies are level gaps, so negative printed values fold
    // back as their magnitudes
    for (auto& v : fr) {
        for (double& w : v) w = std::abs(w);
        std::sort(v.begin(), v.end());
    }
    return t;
}

}  // namespace spinlind::oracle
