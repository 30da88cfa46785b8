#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinlind/errors.hpp"
#include "spinlind/model.hpp"
#include "spinlind/oracle.hpp"
#include "spinlind/spectral.hpp"
#include "spinlind/transport.hpp"

namespace spinlind {

namespace detail {

// Per-spin (or per-bond) array with scalar broadcast.
inline std::vector<double> broadcast_field(const nlohmann::json& j, const std::string& key,
                                           std::size_t n, std::optional<double> fallback) {
    if (!j.contains(key)) {
        if (!fallback) throw validation_error("chain spec: missing field '" + key + "'");
        return std::vector<double>(n, *fallback);
    }
    const auto& v = j.at(key);
    if (v.is_number()) return std::vector<double>(n, v.get<double>());
    if (v.is_array()) {
        auto out = v.get<std::vector<double>>();
        if (out.size() != n)
            throw validation_error("chain spec: field '" + key + "' has length " +
                                   std::to_string(out.size()) + ", expected " +
                                   std::to_string(n));
        return out;
    }
    throw parse_error("chain spec: field '" + key + "' must be a number or array");
}

inline nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

}  // namespace detail

inline ChainSpec chain_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw parse_error("chain spec: expected an object");
    if (!j.contains("n_spins")) throw validation_error("chain spec: missing 'n_spins'");
    ChainSpec spec;
    spec.n_spins = j.at("n_spins").get<int>();
    if (spec.n_spins < 1) throw validation_error("chain spec: n_spins must be positive");
    const auto n = static_cast<std::size_t>(spec.n_spins);
    spec.field_magnitude = detail::broadcast_field(j, "field_magnitude", n, 1.0);
    spec.field_angle = detail::broadcast_field(j, "field_angle", n, 0.0);
    spec.coupling = detail::broadcast_field(j, "coupling", n - 1, n == 1 ? std::optional<double>(0.0) : std::nullopt);
    spec.dissipation_rate = detail::broadcast_field(j, "dissipation_rate", n, std::nullopt);
    // absent temperatures stay 0 and trip validation only where kappa > 0
    spec.temperature = detail::broadcast_field(j, "temperature", n, 0.0);
    spec.validate();
    return spec;
}

inline ChainSpec load_chain_spec(const std::string& path) {
    return chain_spec_from_json(detail::load_json(path));
}

// How to distribute initial population mass when the steady state is not
// unique: maximally mixed, a bare product state by per-spin 'e'/'g' labels,
// or explicit per-component fractions.
struct InitialState {
    enum class Kind { uniform, product_labels, fractions } kind = Kind::uniform;
    std::string labels;             // length N, 'e'/'g'
    std::vector<double> fractions;  // per component, sums to 1
};

struct RunConfig {
    ChainSpec chain;
    InitialState initial;
    // modulator
    std::vector<int> swept_spins;
    std::vector<double> theta_grid;
    // sweep
    std::vector<double> tb_grid;
    std::vector<double> kb_grid;
    // io
    std::string out_path;            // empty = stdout
    std::string format = "csv";      // csv | json
    int workers = 1;
};

namespace detail {

inline std::vector<double> parse_grid(const nlohmann::json& j, const std::string& key) {
    const auto& v = j.at(key);
    std::vector<double> grid;
    if (v.is_array()) {
        grid = v.get<std::vector<double>>();
    } else if (v.is_object()) {
        const double start = v.at("start").get<double>();
        const double stop = v.at("stop").get<double>();
        const int count = v.at("count").get<int>();
        if (count < 1) throw validation_error("grid '" + key + "': count must be >= 1");
        for (int i = 0; i < count; ++i)
            grid.push_back(count == 1 ? start
                                      : start + (stop - start) * i / double(count - 1));
    } else {
        throw parse_error("grid '" + key + "' must be an array or {start, stop, count}");
    }
    if (grid.empty()) throw validation_error("grid '" + key + "' is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw validation_error("grid '" + key + "' must be strictly increasing");
    return grid;
}

}  // namespace detail

inline int default_workers() {
    if (const char* env = std::getenv("SPINLIND_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
    }
    return 1;
}

inline RunConfig parse_config(const std::string& path) {
    const nlohmann::json j = detail::load_json(path);
    if (!j.is_object()) throw parse_error(path + ": expected a JSON object");
    RunConfig cfg;
    if (!j.contains("chain")) throw validation_error(path + ": missing 'chain'");
    if (j.at("chain").is_string())
        cfg.chain = load_chain_spec(j.at("chain").get<std::string>());
    else
        cfg.chain = chain_spec_from_json(j.at("chain"));
    if (j.contains("initial_state")) {
        const auto& v = j.at("initial_state");
        if (v.is_string()) {
            const std::string s = v.get<std::string>();
            if (s == "uniform") {
                cfg.initial.kind = InitialState::Kind::uniform;
            } else {
                if (static_cast<int>(s.size()) != cfg.chain.n_spins)
                    throw validation_error(
                        "initial_state: label string length must equal n_spins");
                for (char c : s)
                    if (c != 'e' && c != 'g')
                        throw validation_error("initial_state: labels must be 'e'/'g'");
                cfg.initial.kind = InitialState::Kind::product_labels;
                cfg.initial.labels = s;
            }
        } else if (v.is_object() && v.contains("fractions")) {
            cfg.initial.kind = InitialState::Kind::fractions;
            cfg.initial.fractions = v.at("fractions").get<std::vector<double>>();
            double sum = 0.0;
            for (double f : cfg.initial.fractions) {
                if (f < 0) throw validation_error("initial_state: negative fraction");
                sum += f;
            }
            if (std::abs(sum - 1.0) > 1e-10)
                throw validation_error("initial_state: fractions must sum to 1");
        } else {
            throw parse_error("initial_state: expected 'uniform', a label string, "
                              "or {\"fractions\": [...]}");
        }
    }
    if (j.contains("modulator")) {
        const auto& m = j.at("modulator");
        cfg.swept_spins = m.at("swept_spins").get<std::vector<int>>();
        cfg.theta_grid = detail::parse_grid(m, "theta_grid");
    }
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        cfg.tb_grid = detail::parse_grid(s, "tb_grid");
        if (s.contains("kb_grid")) cfg.kb_grid = detail::parse_grid(s, "kb_grid");
    }
    if (j.contains("output")) cfg.out_path = j.at("output").get<std::string>();
    if (j.contains("format")) {
        cfg.format = j.at("format").get<std::string>();
        if (cfg.format != "csv" && cfg.format != "json")
            throw validation_error("format must be 'csv' or 'json'");
    }
    cfg.workers = j.contains("workers") ? j.at("workers").get<int>() : default_workers();
    if (cfg.workers < 1) throw validation_error("workers must be >= 1");
    return cfg;
}

// Initial population vector over eigenlevels implied by the configuration.
// Uniform = maximally mixed; product labels project the bare product state
// onto the eigenbasis (p_i = Lambda(i, bare)^2); fractions spread each
// component's mass evenly inside it.
inline Eigen::VectorXd initial_populations(const InitialState& init, const EigenSystem& es,
                                           const SubspaceDecomposition& decomposition) {
    const int dim = es.dim();
    Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
    switch (init.kind) {
        case InitialState::Kind::uniform:
            p.setConstant(1.0 / dim);
            break;
        case InitialState::Kind::product_labels: {
            const int bare = oracle::bare_index_from_states(init.labels);
            for (int i = 0; i < dim; ++i) {
                const double a = es.lambda_matrix(i, bare - 1);
                p(i) = a * a;
            }
            p /= p.sum();
            break;
        }
        case InitialState::Kind::fractions: {
            if (static_cast<int>(init.fractions.size()) != decomposition.count())
                throw validation_error(
                    "initial_state: fraction count " +
                    std::to_string(init.fractions.size()) + " != component count " +
                    std::to_string(decomposition.count()));
            for (int m = 0; m < decomposition.count(); ++m)
                for (int l : decomposition.components[m])
                    p(l - 1) = init.fractions[m] / decomposition.components[m].size();
            break;
        }
    }
    return p;
}

}  // namespace spinlind
