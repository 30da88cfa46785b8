// Command-line front end: steady-state solves, spectrum dumps, parameter
// sweeps, the field-angle modulator scenario, and the self-verification
// suites. Outputs are deterministic: fixed float formatting and row order,
// independent of the worker count.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "spinlind/spinlind.hpp"

namespace {

using namespace spinlind;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool config_required = true) {
    auto* c = cmd->add_option("--config", opt.config_path, "configuration file (JSON)");
    if (config_required) c->required();
    cmd->add_option("--out", opt.out_path, "output path (default: stdout)");
    cmd->add_option("--format", opt.format, "output format: csv or json");
    cmd->add_option("--workers", opt.workers, "worker thread count");
}

RunConfig load(const CommonOptions& opt) {
    RunConfig cfg = parse_config(opt.config_path);
    if (!opt.out_path.empty()) cfg.out_path = opt.out_path;
    if (!opt.format.empty()) {
        if (opt.format != "csv" && opt.format != "json")
            throw validation_error("--format must be 'csv' or 'json'");
        cfg.format = opt.format;
    }
    if (opt.workers > 0) cfg.workers = opt.workers;
    return cfg;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw argument_error("cannot open output path: " + cfg.out_path);
    out << text;
}

int cmd_solve(const CommonOptions& opt) {
    const RunConfig cfg = load(opt);
    const EigenSystem es = eigendecompose(build_hamiltonian(cfg.chain), cfg.chain.hash());
    const ChannelSet channels = build_channels(es, cfg.chain);
    const SubspaceDecomposition decomp = detect_subspaces(channels, cfg.chain, es);
    const RateMatrix rm = build_rate_matrix(cfg.chain, es, channels);
    std::optional<Eigen::VectorXd> initial;
    if (decomp.count() > 1) {
        if (cfg.initial.kind == InitialState::Kind::uniform)
            std::cerr << "warning: " << decomp.count()
                      << " independent components and no initial state given; "
                         "assuming the maximally mixed state\n";
        initial = initial_populations(cfg.initial, es, decomp);
    }
    const SteadyStateSolution sol = solve_steady_state(rm, decomp, initial);
    emit(cfg, solve_report_json(sol).dump(2) + "\n");
    return 0;
}

int cmd_spectrum(const CommonOptions& opt) {
    const RunConfig cfg = load(opt);
    const EigenSystem es = eigendecompose(build_hamiltonian(cfg.chain), cfg.chain.hash());
    const ChannelSet channels = build_channels(es, cfg.chain);
    if (cfg.format == "json") {
        emit(cfg, spectrum_json(es, channels).dump(2) + "\n");
    } else {
        std::ostringstream os;
        write_spectrum_csv(os, es, channels);
        emit(cfg, os.str());
    }
    return 0;
}

void emit_rows(const RunConfig& cfg, const std::vector<SweepRow>& rows) {
    if (cfg.format == "json") {
        emit(cfg, sweep_json(rows, cfg.chain.n_spins).dump(2) + "\n");
    } else {
        std::ostringstream os;
        write_sweep_csv(os, rows, cfg.chain.n_spins);
        emit(cfg, os.str());
    }
}

int cmd_sweep(const CommonOptions& opt) {
    const RunConfig cfg = load(opt);
    if (cfg.tb_grid.empty())
        throw validation_error("sweep: config must provide sweep.tb_grid");
    std::vector<double> kb = cfg.kb_grid;
    if (kb.empty()) kb = {cfg.chain.n_spins > 2 ? cfg.chain.dissipation_rate[1] : 0.0};
    if (kb.size() != 1)
        throw validation_error("sweep: exactly one bulk dissipation rate per run");
    const auto table = bulk_temperature_sweep(cfg.chain, cfg.tb_grid, kb, cfg.workers);
    std::vector<SweepRow> rows;
    for (const auto& r : table) rows.push_back({r.bulk_temperature, r.currents, r.residual});
    emit_rows(cfg, rows);
    return 0;
}

int cmd_modulator(const CommonOptions& opt) {
    const RunConfig cfg = load(opt);
    if (cfg.swept_spins.empty() || cfg.theta_grid.empty())
        throw validation_error("modulator: config must provide modulator.swept_spins "
                               "and modulator.theta_grid");
    ModulatorScenario scenario{cfg.swept_spins, cfg.theta_grid};
    if (cfg.initial.kind != InitialState::Kind::uniform)
        throw validation_error(
            "modulator: the subspace structure changes across the theta grid; "
            "split grid points use the maximally mixed state (omit initial_state)");
    const auto rows = run_modulator(scenario, cfg.chain, std::nullopt, cfg.workers);
    emit_rows(cfg, rows);
    return 0;
}

// ---------------------------------------------------------------------------
// verify: closed-form suites vs the numeric pipeline, fixed seed.
// ---------------------------------------------------------------------------

struct SuiteResult {
    bool pass = true;
    double max_deviation = 0.0;
    std::string detail;

    void check(double deviation, double tol, const std::string& what) {
        max_deviation = std::max(max_deviation, deviation);
        if (!(deviation <= tol)) {
            pass = false;
            if (detail.empty()) detail = what;
        }
    }
};

double log_uniform(std::mt19937& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

ChainSpec random_lf_spec(std::mt19937& rng, int n) {
    ChainSpec s;
    s.n_spins = n;
    for (int i = 0; i < n; ++i) {
        s.field_magnitude.push_back(log_uniform(rng, 1.0, 10.0));
        s.field_angle.push_back(0.0);
        s.dissipation_rate.push_back(log_uniform(rng, 1e-4, 1e-2));
        s.temperature.push_back(log_uniform(rng, 1.0, 20.0));
    }
    for (int i = 0; i + 1 < n; ++i) s.coupling.push_back(log_uniform(rng, 0.05, 1.0));
    return s;
}

SuiteResult verify_thermal_single() {
    SuiteResult r;
    std::mt19937 rng(11);
    for (int k = 0; k < 100; ++k) {
        ChainSpec s = random_lf_spec(rng, 1);
        const auto sol = solve_chain(s);
        const auto pair = oracle::thermal_single(s.field_magnitude[0], s.temperature[0]);
        const int lg = oracle::eigenlevel_of_bare(sol.eigensystem,
                                                  oracle::bare_index_from_states("g"));
        const int le = oracle::eigenlevel_of_bare(sol.eigensystem,
                                                  oracle::bare_index_from_states("e"));
        r.check(std::abs(sol.steady.populations(lg - 1) - pair.ground), 1e-12, "rho_g");
        r.check(std::abs(sol.steady.populations(le - 1) - pair.excited), 1e-12, "rho_e");
    }
    return r;
}

SuiteResult verify_two_spin() {
    SuiteResult r;
    std::mt19937 rng(12);
    for (int k = 0; k < 100; ++k) {
        ChainSpec s = random_lf_spec(rng, 2);
        const auto sol = solve_chain(s);
        const auto f = oracle::two_spin_steady(s);
        const auto pops = f.populations();
        const std::string labels[4] = {"gg", "ge", "eg", "ee"};
        for (int i = 0; i < 4; ++i) {
            const int l = oracle::eigenlevel_of_bare(
                sol.eigensystem, oracle::bare_index_from_states(labels[i]));
            r.check(std::abs(sol.steady.populations(l - 1) - pops[i]) / pops[i], 1e-10,
                    "population " + labels[i]);
        }
        const auto rep = heat_currents(s, sol.channels, sol.rate_matrix,
                                       sol.steady.populations);
        const double scale = std::max(std::abs(f.q1()), 1e-300);
        r.check(std::abs(rep.per_reservoir[0] - f.q1()) / scale, 1e-8, "Q_1");
    }
    return r;
}

SuiteResult verify_three_spin_symmetric() {
    SuiteResult r;
    std::mt19937 rng(13);
    for (int k = 0; k < 100; ++k) {
        ChainSpec s = random_lf_spec(rng, 3);
        s.field_magnitude[1] = s.field_magnitude[2] = s.field_magnitude[0];
        s.coupling[1] = s.coupling[0];
        s.temperature[2] = s.temperature[0];
        s.dissipation_rate[2] = s.dissipation_rate[0];
        const auto sol = solve_chain(s);
        const auto f = oracle::three_spin_symmetric_steady(s);
        const auto pops = f.populations();
        const std::string labels[8] = {"ggg", "gge", "geg", "gee",
                                       "egg", "ege", "eeg", "eee"};
        for (int i = 0; i < 8; ++i) {
            const int l = oracle::eigenlevel_of_bare(
                sol.eigensystem, oracle::bare_index_from_states(labels[i]));
            r.check(std::abs(sol.steady.populations(l - 1) - pops[i]) / pops[i], 1e-9,
                    "population " + labels[i]);
        }
        const auto rep = heat_currents(s, sol.channels, sol.rate_matrix,
                                       sol.steady.populations);
        const double scale = std::max({std::abs(f.q1()), std::abs(f.q2()), 1e-300});
        r.check(std::abs(rep.per_reservoir[0] - f.q1()) / scale, 1e-8, "Q_1");
        r.check(std::abs(rep.per_reservoir[1] - f.q2()) / scale, 1e-8, "Q_2");
    }
    return r;
}

SuiteResult verify_blocked_three_spin() {
    SuiteResult r;
    std::mt19937 rng(14);
    for (int k = 0; k < 100; ++k) {
        ChainSpec s = random_lf_spec(rng, 3);
        s.dissipation_rate[1] = 0.0;
        for (char mid : {'g', 'e'}) {
            const auto b = oracle::blocked_three_spin(s, mid);
            const EigenSystem es = eigendecompose(build_hamiltonian(s), s.hash());
            const ChannelSet ch = build_channels(es, s);
            const SubspaceDecomposition dec = detect_subspaces(ch, s, es);
            const RateMatrix rm = build_rate_matrix(s, es, ch);
            // initial state fully inside the chosen subspace
            Eigen::VectorXd init = Eigen::VectorXd::Zero(es.dim());
            const std::string probe = std::string("g") + mid + "g";
            const int comp = dec.component_of(
                oracle::eigenlevel_of_bare(es, oracle::bare_index_from_states(probe)));
            for (int l : dec.components[comp]) init(l - 1) = 1.0 / dec.components[comp].size();
            const auto sol = solve_steady_state(rm, dec, init);
            const std::string tails[4] = {"gg", "ge", "eg", "ee"};
            for (int i = 0; i < 4; ++i) {
                const std::string full = std::string(1, tails[i][0]) + mid + tails[i][1];
                const int l = oracle::eigenlevel_of_bare(
                    es, oracle::bare_index_from_states(full));
                r.check(std::abs(sol.populations(l - 1) - b.populations[i]), 1e-12,
                        "population " + full);
            }
            const auto rep = heat_currents(s, ch, rm, sol.populations);
            r.check(rep.max_abs(), 1e-15, "current blocking");
        }
    }
    return r;
}

SuiteResult verify_seven_spin() {
    SuiteResult r;
    std::mt19937 rng(15);
    for (int k = 0; k < 20; ++k) {
        ChainSpec s = random_lf_spec(rng, 7);
        s.dissipation_rate[2] = s.dissipation_rate[5] = 0.0;
        const EigenSystem es = eigendecompose(build_hamiltonian(s), s.hash());
        const ChannelSet ch = build_channels(es, s);
        const SubspaceDecomposition dec = detect_subspaces(ch, s, es);
        const RateMatrix rm = build_rate_matrix(s, es, ch);
        if (dec.count() != 4) {
            r.pass = false;
            r.detail = "expected 4 components";
            continue;
        }
        for (char s3 : {'g', 'e'}) {
            for (char s6 : {'g', 'e'}) {
                const auto comp = oracle::seven_spin_subchain_currents(s, s3, s6);
                const std::string probe = std::string("gg") + s3 + "gg" + s6 + "g";
                const int m = dec.component_of(oracle::eigenlevel_of_bare(
                    es, oracle::bare_index_from_states(probe)));
                Eigen::VectorXd init = Eigen::VectorXd::Zero(es.dim());
                for (int l : dec.components[m]) init(l - 1) = 1.0 / dec.components[m].size();
                const auto sol = solve_steady_state(rm, dec, init);
                const auto rep = heat_currents(s, ch, rm, sol.populations);
                double scale = 1e-300;
                for (double q : comp.per_reservoir) scale = std::max(scale, std::abs(q));
                for (int mu = 0; mu < 7; ++mu)
                    r.check(std::abs(rep.per_reservoir[mu] - comp.per_reservoir[mu]) / scale,
                            1e-9, "Q_" + std::to_string(mu + 1));
            }
        }
    }
    return r;
}

SuiteResult verify_frequency_tables() {
    SuiteResult r;
    std::mt19937 rng(16);
    for (int k = 0; k < 100; ++k) {
        const std::array<double, 3> b = {log_uniform(rng, 1.0, 10.0),
                                         log_uniform(rng, 1.0, 10.0),
                                         log_uniform(rng, 1.0, 10.0)};
        const std::array<double, 2> j = {log_uniform(rng, 0.05, 1.0),
                                         log_uniform(rng, 0.05, 1.0)};
        for (const std::string tag : {"LLL", "TLL", "LTL", "LLT", "TLT", "TTL", "LTT"}) {
            const auto table = oracle::closed_form_frequencies(tag, b, j);
            ChainSpec s;
            s.n_spins = 3;
            s.field_magnitude = {b[0], b[1], b[2]};
            const auto th = oracle::pattern_angles(tag);
            s.field_angle = {th[0], th[1], th[2]};
            s.coupling = {j[0], j[1]};
            s.dissipation_rate = {1e-3, 1e-3, 1e-3};
            s.temperature = {5.0, 5.0, 5.0};
            const EigenSystem es = eigendecompose(build_hamiltonian(s), s.hash());
            const ChannelSet ch = build_channels(es, s);
            for (int mu = 1; mu <= 3; ++mu) {
                std::vector<double> numeric;
                for (const auto& g : group_by_frequency(ch.for_reservoir(mu)))
                    numeric.push_back(g.omega);
                std::sort(numeric.begin(), numeric.end());
                std::vector<double> expected = table.per_reservoir[mu - 1];
                // closed forms can list coincident frequencies separately
                std::vector<double> dedup;
                for (double w : expected)
                    if (dedup.empty() || std::abs(w - dedup.back()) > 1e-9 * std::abs(w))
                        dedup.push_back(w);
                if (dedup.size() != numeric.size()) {
                    r.pass = false;
                    r.detail = tag + " spin " + std::to_string(mu) + ": count mismatch";
                    continue;
                }
                for (std::size_t i = 0; i < dedup.size(); ++i)
                    r.check(std::abs(dedup[i] - numeric[i]), 1e-10,
                            tag + " spin " + std::to_string(mu));
            }
        }
    }
    return r;
}

SuiteResult verify_liouville() {
    SuiteResult r;
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> angle(0.1, 1.4);
    for (int k = 0; k < 20; ++k) {
        ChainSpec s = random_lf_spec(rng, 3);
        for (auto& th : s.field_angle) th = angle(rng);
        const auto sol = solve_chain(s);
        const auto sup = build_liouvillian(s, sol.eigensystem, sol.channels);
        if (sup.merged_channels || sup.degenerate_pairs) continue;  // generic draw expected
        const auto rho = steady_density(sup);
        for (int i = 0; i < sol.eigensystem.dim(); ++i)
            r.check(std::abs(rho(i, i).real() - sol.steady.populations(i)), 1e-9,
                    "diagonal vs rate equation");
        const auto decay = coherence_decay_check(sup, s);
        if (decay.status != DecayStatus::decays) {
            r.pass = false;
            r.detail = "coherence mode failed to decay";
        }
    }
    return r;
}

int cmd_verify(const CommonOptions& opt) {
    RunConfig cfg;
    if (!opt.config_path.empty()) cfg = load(opt);
    else if (!opt.out_path.empty()) cfg.out_path = opt.out_path;
    nlohmann::ordered_json report;
    bool all_pass = true;
    const std::pair<std::string, SuiteResult (*)()> suites[] = {
        {"thermal_single", verify_thermal_single},
        {"two_spin", verify_two_spin},
        {"three_spin_symmetric", verify_three_spin_symmetric},
        {"blocked_three_spin", verify_blocked_three_spin},
        {"seven_spin_subchains", verify_seven_spin},
        {"frequency_tables", verify_frequency_tables},
        {"liouville_cross_check", verify_liouville},
    };
    for (const auto& [name, fn] : suites) {
        const SuiteResult res = fn();
        report[name] = {{"pass", res.pass}, {"max_deviation", res.max_deviation}};
        if (!res.detail.empty()) report[name]["detail"] = res.detail;
        all_pass = all_pass && res.pass;
    }
    report["all_pass"] = all_pass;
    emit(cfg, report.dump(2) + "\n");
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipative Ising-chain steady states and heat currents"};
    app.require_subcommand(1);
    CommonOptions solve_opt, spectrum_opt, sweep_opt, modulator_opt, verify_opt;
    auto* solve = app.add_subcommand("solve", "steady-state populations (JSON)");
    add_common(solve, solve_opt);
    auto* spectrum = app.add_subcommand("spectrum", "eigenlevels and transition channels");
    add_common(spectrum, spectrum_opt);
    auto* sweep = app.add_subcommand("sweep", "bulk-temperature sweep of heat currents");
    add_common(sweep, sweep_opt);
    auto* modulator = app.add_subcommand("modulator", "field-angle sweep of heat currents");
    add_common(modulator, modulator_opt);
    auto* verify = app.add_subcommand("verify", "run the closed-form verification suites");
    add_common(verify, verify_opt, false);
    CLI11_PARSE(app, argc, argv);
    try {
        if (solve->parsed()) return cmd_solve(solve_opt);
        if (spectrum->parsed()) return cmd_spectrum(spectrum_opt);
        if (sweep->parsed()) return cmd_sweep(sweep_opt);
        if (modulator->parsed()) return cmd_modulator(modulator_opt);
        if (verify->parsed()) return cmd_verify(verify_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
