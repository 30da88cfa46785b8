#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "helpers.hpp"

using namespace spinlind;
using Catch::Approx;
using testutil::random_spec;

namespace {

ChainSpec lf_spec(std::vector<double> b, std::vector<double> j, std::vector<double> kappa,
                  std::vector<double> t) {
    ChainSpec s;
    s.n_spins = static_cast<int>(b.size());
    s.field_magnitude = std::move(b);
    s.field_angle.assign(s.n_spins, 0.0);
    s.coupling = std::move(j);
    s.dissipation_rate = std::move(kappa);
    s.temperature = std::move(t);
    return s;
}

}  // namespace

TEST_CASE("bare index from state labels", "[oracle]") {
    CHECK(oracle::bare_index_from_states("e") == 1);
    CHECK(oracle::bare_index_from_states("g") == 2);
    CHECK(oracle::bare_index_from_states("ee") == 1);
    CHECK(oracle::bare_index_from_states("eg") == 2);
    CHECK(oracle::bare_index_from_states("ge") == 3);
    CHECK(oracle::bare_index_from_states("gg") == 4);
    CHECK(oracle::bare_index_from_states("geg") == 6);
    CHECK_THROWS_AS(oracle::bare_index_from_states("gx"), argument_error);
    // the labels round-trip through spin_sign
    for (int i = 1; i <= 8; ++i) {
        std::string lab;
        for (int mu = 1; mu <= 3; ++mu)
            lab += spin_sign(i, mu, 3) > 0 ? 'e' : 'g';
        CHECK(oracle::bare_index_from_states(lab) == i);
    }
}

TEST_CASE("eigenlevel lookup inverts the longitudinal permutation", "[oracle]") {
    auto s = lf_spec({2.0, 5.0, 8.0}, {0.5, 0.4}, {0.001, 0.001, 0.001}, {10, 3, 5});
    const auto es = eigendecompose(build_hamiltonian(s), s.hash());
    // in LF the all-ground state is the true ground state here (positive
    // fields dominate the couplings), and all-excited is the top level
    CHECK(oracle::eigenlevel_of_bare(es, oracle::bare_index_from_states("ggg")) == 1);
    CHECK(oracle::eigenlevel_of_bare(es, oracle::bare_index_from_states("eee")) == 8);
    // the lookup is a bijection on the permutation
    std::set<int> levels;
    for (int bare = 1; bare <= 8; ++bare)
        levels.insert(oracle::eigenlevel_of_bare(es, bare));
    CHECK(levels.size() == 8);
    CHECK_THROWS_AS(oracle::eigenlevel_of_bare(es, 0), argument_error);
    CHECK_THROWS_AS(oracle::eigenlevel_of_bare(es, 9), argument_error);
}

TEST_CASE("signed spectral densities", "[oracle]") {
    const auto [up, down] = oracle::signed_rates(2.0, 0.01, 5.0);
    const auto r = bath_rates(2.0, 0.01, 5.0);
    CHECK(up == r.upward);
    CHECK(down == r.downward);
    // negative frequency swaps excitation and decay
    const auto [nup, ndown] = oracle::signed_rates(-2.0, 0.01, 5.0);
    CHECK(nup == r.downward);
    CHECK(ndown == r.upward);
    CHECK_THROWS_AS(oracle::signed_rates(0.0, 0.01, 5.0), argument_error);
}

TEST_CASE("single-spin thermal populations", "[oracle]") {
    const auto p = oracle::thermal_single(3.0, 5.0);
    const double n = bose_occupation(3.0, 5.0);
    CHECK(p.ground == Approx((n + 1.0) / (2.0 * n + 1.0)).epsilon(1e-15));
    CHECK(p.excited == Approx(n / (2.0 * n + 1.0)).epsilon(1e-15));
    CHECK(p.ground + p.excited == Approx(1.0).epsilon(1e-15));
    // detailed balance
    CHECK(p.excited / p.ground == Approx(std::exp(-3.0 / 5.0)).epsilon(1e-12));
}

TEST_CASE("two-spin closed form against the numeric pipeline", "[oracle]") {
    std::mt19937 rng(501);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_spec(rng, 2);
        const auto f = oracle::two_spin_steady(s);
        const auto sol = solve_chain(s);
        const auto rep = heat_currents(s, sol.channels, sol.rate_matrix,
                                       sol.steady.populations);
        const auto pops = f.populations();
        const char* labels[4] = {"gg", "ge", "eg", "ee"};
        for (int k = 0; k < 4; ++k)
            CHECK(testutil::population_by_label(sol, labels[k]) ==
                  Approx(pops[k]).epsilon(1e-10));
        CHECK(rep.per_reservoir[0] == Approx(f.q1()).epsilon(1e-8).margin(1e-18));
        CHECK(f.q1() == Approx(-f.q2()).epsilon(1e-15));
    }
}

TEST_CASE("two-spin symmetries", "[oracle]") {
    SECTION("equal temperatures carry no current") {
        const auto f = oracle::two_spin_closed_form(2.0, 5.0, 0.5, 0.002, 0.004, 4.0, 4.0);
        CHECK(std::abs(f.q1()) < 1e-17);
    }
    SECTION("hotter left spin pushes heat rightward") {
        const auto f = oracle::two_spin_closed_form(3.0, 3.0, 0.5, 0.002, 0.002, 8.0, 2.0);
        CHECK(f.q1() > 0.0);
        CHECK(f.q2() < 0.0);
    }
    SECTION("requirements") {
        CHECK_THROWS_AS(oracle::two_spin_closed_form(2, 5, 0.5, 0.0, 0.004, 4, 4),
                        argument_error);
        auto tilted = lf_spec({2.0, 5.0}, {0.5}, {0.001, 0.001}, {5, 2});
        tilted.field_angle[0] = 0.3;
        CHECK_THROWS_AS(oracle::two_spin_steady(tilted), argument_error);
    }
}

TEST_CASE("symmetric three-spin closed form", "[oracle]") {
    std::mt19937 rng(502);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_spec(rng, 3);
        // impose the symmetry the closed form requires
        s.field_magnitude[1] = s.field_magnitude[2] = s.field_magnitude[0];
        s.coupling[1] = s.coupling[0];
        s.temperature[2] = s.temperature[0];
        s.dissipation_rate[2] = s.dissipation_rate[0];
        const auto f = oracle::three_spin_symmetric_steady(s);
        CHECK(f.omega_n1 == Approx(s.field_magnitude[0] - s.coupling[0]));
        CHECK(f.omega_b3 == Approx(s.field_magnitude[0] + 2.0 * s.coupling[0]));
        const auto sol = solve_chain(s);
        const auto rep = heat_currents(s, sol.channels, sol.rate_matrix,
                                       sol.steady.populations);
        const auto pops = f.populations();
        const char* labels[8] = {"ggg", "gge", "geg", "gee", "egg", "ege", "eeg", "eee"};
        for (int k = 0; k < 8; ++k)
            CHECK(testutil::population_by_label(sol, labels[k]) ==
                  Approx(pops[k]).epsilon(1e-9));
        CHECK(rep.per_reservoir[0] == Approx(f.q1()).epsilon(1e-8).margin(1e-18));
        CHECK(rep.per_reservoir[1] == Approx(f.q2()).epsilon(1e-8).margin(1e-18));
        // mirror symmetry of the chain
        CHECK(pops[1] == Approx(pops[4]).epsilon(1e-14));  // gge = egg
        CHECK(pops[3] == Approx(pops[6]).epsilon(1e-14));  // gee = eeg
        CHECK(f.q3() == Approx(f.q1()).epsilon(1e-15));
        CHECK(f.q2() == Approx(-2.0 * f.q1()).epsilon(1e-15));
    }
}

TEST_CASE("three-spin closed form requirements", "[oracle]") {
    auto s = lf_spec({3.0, 3.0, 3.0}, {0.4, 0.4}, {0.002, 0.001, 0.002}, {8.0, 2.0, 8.0});
    CHECK_NOTHROW(oracle::three_spin_symmetric_steady(s));
    auto broken = s;
    broken.field_magnitude[1] = 4.0;
    CHECK_THROWS_AS(oracle::three_spin_symmetric_steady(broken), argument_error);
    broken = s;
    broken.temperature[2] = 9.0;
    CHECK_THROWS_AS(oracle::three_spin_symmetric_steady(broken), argument_error);
}

TEST_CASE("blocked three-spin subspaces", "[oracle]") {
    auto s = lf_spec({2.0, 5.0, 8.0}, {0.5, 0.4}, {0.001, 0.0, 0.001}, {10, 0, 5});
    const auto bg = oracle::blocked_three_spin(s, 'g');
    CHECK(bg.omega1 == Approx(1.5));  // B1 - J12
    CHECK(bg.omega3 == Approx(7.6));  // B3 - J23
    const auto be = oracle::blocked_three_spin(s, 'e');
    CHECK(be.omega1 == Approx(2.5));
    CHECK(be.omega3 == Approx(8.4));
    double sum = 0.0;
    for (double p : bg.populations) sum += p;
    CHECK(sum == Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(oracle::blocked_three_spin(s, 'x'), argument_error);
    auto diss = s;
    diss.dissipation_rate[1] = 0.001;
    diss.temperature[1] = 3.0;
    CHECK_THROWS_AS(oracle::blocked_three_spin(diss, 'g'), argument_error);
}

TEST_CASE("seven-spin composed currents match the full solve", "[oracle]") {
    std::mt19937 rng(503);
    for (int trial = 0; trial < 5; ++trial) {
        auto s = random_spec(rng, 7);
        s.dissipation_rate[2] = s.dissipation_rate[5] = 0.0;
        const auto sol0 = solve_chain(s);
        REQUIRE(sol0.decomposition.count() == 4);
        for (char s3 : {'g', 'e'})
            for (char s6 : {'g', 'e'}) {
                const auto comp = oracle::seven_spin_subchain_currents(s, s3, s6);
                // place all initial mass in the frozen (s3, s6) component
                const std::string seed = std::string("ee") + s3 + "ee" + s6 + "e";
                const Eigen::VectorXd init = testutil::component_initial(
                    sol0.eigensystem, sol0.decomposition, seed);
                const auto sol = solve_chain(s, init);
                const auto rep = heat_currents(s, sol.channels, sol.rate_matrix,
                                               sol.steady.populations);
                for (int mu = 0; mu < 7; ++mu)
                    CHECK(rep.per_reservoir[mu] ==
                          Approx(comp.per_reservoir[mu]).epsilon(1e-9).margin(1e-20));
                // non-dissipative and trailing spins carry nothing
                CHECK(comp.per_reservoir[2] == 0.0);
                CHECK(comp.per_reservoir[5] == 0.0);
                CHECK(comp.per_reservoir[6] == 0.0);
            }
    }
}

TEST_CASE("closed-form frequency tables", "[oracle]") {
    const std::array<double, 3> b{2.0, 5.0, 8.0};
    const std::array<double, 2> j{0.5, 0.4};
    SECTION("LLL") {
        const auto t = oracle::closed_form_frequencies("LLL", b, j);
        CHECK(t.coefficients_available);
        CHECK(t.per_reservoir[0] == std::vector<double>{1.5, 2.5});
        REQUIRE(t.per_reservoir[1].size() == 4);
        CHECK(t.per_reservoir[1].front() == Approx(4.1));
        CHECK(t.per_reservoir[1].back() == Approx(5.9));
        CHECK(t.per_reservoir[2] == std::vector<double>{7.6, 8.4});
    }
    SECTION("transverse nodal gaps") {
        const auto t = oracle::closed_form_frequencies("TLT", b, j);
        REQUIRE(t.per_reservoir[0].size() == 1);
        CHECK(t.per_reservoir[0][0] == Approx(std::sqrt(2.0 * 2.0 + 0.5 * 0.5)));
        REQUIRE(t.per_reservoir[2].size() == 1);
        CHECK(t.per_reservoir[2][0] == Approx(std::sqrt(8.0 * 8.0 + 0.4 * 0.4)));
        CHECK(t.per_reservoir[1].size() == 9);
    }
    SECTION("partial-support patterns") {
        CHECK_FALSE(oracle::closed_form_frequencies("TTL", b, j).coefficients_available);
        CHECK_FALSE(oracle::closed_form_frequencies("LTT", b, j).coefficients_available);
        CHECK_THROWS_AS(oracle::closed_form_frequencies("TTT", b, j), argument_error);
        CHECK_THROWS_AS(oracle::closed_form_frequencies("LXL", b, j), argument_error);
    }
}

TEST_CASE("frequency tables match the numeric channels", "[oracle]") {
    std::mt19937 rng(504);
    const char* tags[] = {"LLL", "TLL", "LTL", "LLT", "TLT", "TTL", "LTT"};
    for (const char* tag : tags) {
        for (int trial = 0; trial < 5; ++trial) {
            auto s = random_spec(rng, 3);
            const auto th = oracle::pattern_angles(tag);
            for (int i = 0; i < 3; ++i) s.field_angle[i] = th[i];
            const auto table = oracle::closed_form_frequencies(
                tag, {s.field_magnitude[0], s.field_magnitude[1], s.field_magnitude[2]},
                {s.coupling[0], s.coupling[1]});
            const auto es = eigendecompose(build_hamiltonian(s), s.hash());
            const auto set = build_channels(es, s);
            for (int mu = 1; mu <= 3; ++mu) {
                // numeric frequency multiset, deduplicated
                std::vector<double> numeric;
                for (const auto& g : group_by_frequency(set.for_reservoir(mu)))
                    numeric.push_back(g.omega);
                std::sort(numeric.begin(), numeric.end());
                // expected list deduplicated at matching tolerance
                std::vector<double> expect;
                for (double w : table.per_reservoir[mu - 1])
                    if (expect.empty() || w - expect.back() > 1e-9 * w)
                        expect.push_back(w);
                REQUIRE(numeric.size() == expect.size());
                for (std::size_t k = 0; k < numeric.size(); ++k)
                    CHECK(numeric[k] == Approx(expect[k]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("pattern angle decoding", "[oracle]") {
    const auto th = oracle::pattern_angles("LTL");
    CHECK(th[0] == 0.0);
    CHECK(th[1] == Approx(std::asin(1.0)));
    CHECK(th[2] == 0.0);
    CHECK_THROWS_AS(oracle::pattern_angles("LL"), argument_error);
}
