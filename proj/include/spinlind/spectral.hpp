#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinlind/errors.hpp"
#include "spinlind/model.hpp"

namespace spinlind {

// Eigendecomposition H = Lambda^T diag(lambda) Lambda. Row i of lambda_matrix
// is eigenvector i expressed in the bare basis, eigenvalues ascending. The
// sign of each eigenvector is fixed so its first non-negligible component is
// positive.
struct EigenSystem {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd lambda_matrix;  // lambda_matrix(i,j) = <bare j | eigen i>
    std::uint64_t spec_hash = 0;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
    int n_spins() const {
        int n = 0;
        while ((1 << n) < dim()) ++n;
        return n;
    }
    double frequency_scale() const {
        return std::max(1.0, eigenvalues.cwiseAbs().maxCoeff());
    }
};

inline EigenSystem eigendecompose(const Eigen::MatrixXd& h, std::uint64_t spec_hash = 0) {
    if (h.rows() != h.cols()) throw argument_error("eigendecompose: matrix not square");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw argument_error("eigendecompose: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw numeric_error("eigendecompose: eigensolver failed to converge");
    EigenSystem es;
    es.eigenvalues = solver.eigenvalues();
    es.lambda_matrix = solver.eigenvectors().transpose();
    es.spec_hash = spec_hash;
    for (int i = 0; i < es.dim(); ++i) {
        for (int j = 0; j < es.dim(); ++j) {
            const double v = es.lambda_matrix(i, j);
            if (std::abs(v) > 1e-10) {
                if (v < 0) es.lambda_matrix.row(i) *= -1.0;
                break;
            }
        }
    }
    return es;
}

// Coefficient <i|sigma^x_mu|j> through the bare-basis flip structure:
// sum over k in C(mu,N) of Lambda(i,k)Lambda(j,k') + Lambda(i,k')Lambda(j,k)
// with k' = k + 2^(N-mu). Levels are 1-based.
inline double transition_coefficient(const EigenSystem& es, int mu, int i, int j) {
    const int n = es.n_spins();
    if (i < 1 || i > es.dim() || j < 1 || j > es.dim())
        throw argument_error("transition_coefficient: level index out of range");
    const int stride = bit_stride(mu, n);
    double c = 0.0;
    for (int k : index_set(mu, n)) {
        c += es.lambda_matrix(i - 1, k - 1) * es.lambda_matrix(j - 1, k + stride - 1) +
             es.lambda_matrix(i - 1, k + stride - 1) * es.lambda_matrix(j - 1, k - 1);
    }
    return c;
}

// One reservoir-induced jump |lower><upper| with frequency omega > 0.
struct TransitionChannel {
    int reservoir = 0;  // mu, 1-based
    int lower = 0;      // eigenlevel, 1-based, lambda_lower < lambda_upper
    int upper = 0;
    double omega = 0.0;
    double coefficient = 0.0;
    bool merged = false;  // set when the channel aggregates degenerate pairs
};

// A level pair with omega ~ 0 whose coupling did not prune away; the secular
// rate equation ignores the population-coherence mixing such a pair induces.
struct DegenerateCouplingWarning {
    int reservoir = 0;
    int level_a = 0;
    int level_b = 0;
    double coefficient = 0.0;
};

struct ChannelSet {
    std::vector<TransitionChannel> channels;
    std::vector<DegenerateCouplingWarning> warnings;
    std::uint64_t spec_hash = 0;

    std::vector<TransitionChannel> for_reservoir(int mu) const {
        std::vector<TransitionChannel> out;
        for (const auto& c : channels)
            if (c.reservoir == mu) out.push_back(c);
        return out;
    }
};

constexpr double kChannelPruneRel = 1e-12;     // |c| below this * max|c| is a structural zero
constexpr double kFrequencyGroupRel = 1e-9;    // relative tolerance for degenerate frequencies
constexpr double kZeroFrequencyRel = 1e-12;    // omega below this * scale counts as degenerate

inline ChannelSet build_channels(const EigenSystem& es, const ChainSpec& spec) {
    if (es.spec_hash != 0 && es.spec_hash != spec.hash())
        throw consistency_error("build_channels: EigenSystem does not match ChainSpec");
    const int n = spec.n_spins;
    const int dim = es.dim();
    if (dim != bare_dim(n))
        throw consistency_error("build_channels: dimension mismatch");
    ChannelSet out;
    out.spec_hash = spec.hash();
    const double wzero = kZeroFrequencyRel * es.frequency_scale();
    for (int mu = 1; mu <= n; ++mu) {
        // coeff = Lambda * P_mu * Lambda^T with P_mu the spin-mu bit flip
        const int stride = bit_stride(mu, n);
        Eigen::MatrixXd flipped(dim, dim);
        for (int k = 0; k < dim; ++k) flipped.row(k ^ stride) = es.lambda_matrix.col(k).transpose();
        Eigen::MatrixXd coeff = es.lambda_matrix * flipped;
        const double prune = kChannelPruneRel * std::max(1e-300, coeff.cwiseAbs().maxCoeff());
        for (int l = 0; l < dim; ++l) {
            for (int u = l + 1; u < dim; ++u) {
                const double c = coeff(l, u);
                const double w = es.eigenvalues(u) - es.eigenvalues(l);
                if (std::abs(c) <= prune) continue;
                if (w <= wzero) {
                    out.warnings.push_back({mu, l + 1, u + 1, c});
                    continue;
                }
                out.channels.push_back({mu, l + 1, u + 1, w, c, false});
            }
        }
    }
    return out;
}

// Channels of one reservoir merged at a common frequency: the secular jump
// operator sum_k c_k |l_k><u_k|.
struct ChannelGroup {
    int reservoir = 0;
    double omega = 0.0;
    std::vector<TransitionChannel> members;

    bool merged() const { return members.size() > 1; }
};

inline std::vector<ChannelGroup> group_by_frequency(const std::vector<TransitionChannel>& channels,
                                                    double rel_tol = kFrequencyGroupRel) {
    std::vector<TransitionChannel> sorted = channels;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.reservoir != b.reservoir) return a.reservoir < b.reservoir;
        if (a.omega != b.omega) return a.omega < b.omega;
        return std::tie(a.lower, a.upper) < std::tie(b.lower, b.upper);
    });
    std::vector<ChannelGroup> groups;
    for (const auto& c : sorted) {
        if (!groups.empty() && groups.back().reservoir == c.reservoir &&
            std::abs(c.omega - groups.back().omega) <= rel_tol * std::abs(groups.back().omega)) {
            groups.back().members.push_back(c);
        } else {
            groups.push_back({c.reservoir, c.omega, {c}});
        }
    }
    for (auto& g : groups) {
        if (g.members.size() > 1)
            for (auto& m : g.members) m.merged = true;
    }
    return groups;
}

// Partition of eigenlevels into components not connected by any dissipative
// channel. Labels identify frozen non-dissipative spin states when the
// component has a definite bare value for each such spin (exact in LF).
struct SubspaceDecomposition {
    std::vector<std::vector<int>> components;  // 1-based eigenlevels, each sorted
    std::vector<std::string> labels;           // e.g. "2_g" or "" when not identifiable

    int count() const { return static_cast<int>(components.size()); }
    int component_of(int level) const {
        for (int m = 0; m < count(); ++m)
            for (int l : components[m])
                if (l == level) return m;
        throw argument_error("component_of: level not found");
    }
};

inline SubspaceDecomposition detect_subspaces(const ChannelSet& set, const ChainSpec& spec,
                                              const EigenSystem& es) {
    const int dim = es.dim();
    std::vector<int> parent(dim);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& c : set.channels) {
        if (spec.dissipation_rate[c.reservoir - 1] <= 0) continue;
        const int a = find(c.lower - 1), b = find(c.upper - 1);
        if (a != b) parent[a] = b;
    }
    std::vector<std::vector<int>> comps;
    std::vector<int> comp_id(dim, -1);
    for (int i = 0; i < dim; ++i) {
        const int r = find(i);
        if (comp_id[r] < 0) {
            comp_id[r] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[comp_id[r]].push_back(i + 1);
    }
    SubspaceDecomposition d;
    d.components = std::move(comps);
    const int n = spec.n_spins;
    for (const auto& comp : d.components) {
        std::string label;
        for (int mu = 1; mu <= n; ++mu) {
            if (spec.dissipation_rate[mu - 1] > 0) continue;
            // mean sigma^z of spin mu over each level's bare support
            bool frozen = true;
            double state = 0.0;
            for (std::size_t idx = 0; idx < comp.size() && frozen; ++idx) {
                double mean = 0.0;
                for (int k = 1; k <= dim; ++k) {
                    const double a = es.lambda_matrix(comp[idx] - 1, k - 1);
                    mean += a * a * spin_sign(k, mu, n);
                }
                if (std::abs(std::abs(mean) - 1.0) > 1e-9) frozen = false;
                else if (idx == 0) state = mean;
                else if (mean * state < 0) frozen = false;
            }
            if (frozen) {
                if (!label.empty()) label += ' ';
                label += std::to_string(mu) + (state > 0 ? "_e" : "_g");
            }
        }
        d.labels.push_back(label);
    }
    return d;
}

// Reflection symmetry of pure-TF eigenvectors: |Lambda(i,j)| = |Lambda(i, 2^N+1-j)|.
inline bool tf_symmetry_check(const EigenSystem& es, const ChainSpec& spec) {
    if (!spec.is_transverse())
        throw argument_error("tf_symmetry_check: spec is not purely transverse");
    const int dim = es.dim();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (std::abs(std::abs(es.lambda_matrix(i, j)) -
                         std::abs(es.lambda_matrix(i, dim - 1 - j))) > 1e-9)
                return false;
    return true;
}

}  // namespace spinlind
