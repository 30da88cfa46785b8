#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spinlind/bath.hpp"
#include "spinlind/errors.hpp"

using namespace spinlind;
using Catch::Approx;

TEST_CASE("Bose occupation reference values", "[bath]") {
    CHECK(bose_occupation(1.0, 1.0) == Approx(1.0 / std::expm1(1.0)).epsilon(1e-15));
    // omega/T = 0.1
    CHECK(bose_occupation(1.0, 10.0) == Approx(9.508331944775050).epsilon(1e-13));
    // omega/T = 5, written against exp directly rather than expm1
    CHECK(bose_occupation(5.0, 1.0) ==
          Approx(1.0 / (std::exp(5.0) - 1.0)).epsilon(1e-14));
}

TEST_CASE("Bose occupation guarded branches", "[bath]") {
    SECTION("deep quantum regime avoids overflow") {
        const double n = bose_occupation(800.0, 1.0);
        CHECK(std::isfinite(n));
        CHECK(n == Approx(std::exp(-800.0)).epsilon(1e-12));
        CHECK(n >= 0.0);
    }
    SECTION("classical regime uses the series") {
        const double x = 1e-10;
        const double n = bose_occupation(x, 1.0);
        CHECK(n == Approx(1.0 / x - 0.5 + x / 12.0).epsilon(1e-12));
        CHECK(std::isfinite(n));
    }
    SECTION("branch boundaries are continuous") {
        CHECK(bose_occupation(1e-8 * 0.999, 1.0) ==
              Approx(bose_occupation(1e-8 * 1.001, 1.0)).epsilon(1e-6));
    }
}

TEST_CASE("Bose occupation argument guards", "[bath]") {
    CHECK_THROWS_AS(bose_occupation(0.0, 1.0), argument_error);
    CHECK_THROWS_AS(bose_occupation(-1.0, 1.0), argument_error);
    CHECK_THROWS_AS(bose_occupation(1.0, 0.0), argument_error);
    CHECK_THROWS_AS(bose_occupation(1.0, -2.0), argument_error);
}

TEST_CASE("bath rates structure", "[bath]") {
    const auto r = bath_rates(2.0, 0.01, 5.0);
    const double n = bose_occupation(2.0, 5.0);
    CHECK(r.upward == Approx(0.01 * n).epsilon(1e-15));
    CHECK(r.downward == Approx(0.01 * (n + 1.0)).epsilon(1e-15));
    CHECK(r.omega == 2.0);
    CHECK(r.temperature == 5.0);
}

TEST_CASE("zero coupling short-circuits", "[bath]") {
    // kappa = 0 must not evaluate the occupation (omega may be unvalidated)
    const auto r = bath_rates(-3.0, 0.0, 0.0);
    CHECK(r.upward == 0.0);
    CHECK(r.downward == 0.0);
    CHECK_THROWS_AS(bath_rates(1.0, -0.5, 1.0), argument_error);
}

TEST_CASE("detailed balance and flat-spectrum difference", "[bath]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uw(0.05, 20.0), ut(0.5, 50.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double w = uw(rng), t = ut(rng), kappa = 0.003;
        const auto r = bath_rates(w, kappa, t);
        CHECK(r.downward - r.upward == Approx(kappa).epsilon(1e-12));
        CHECK(r.upward / r.downward == Approx(std::exp(-w / t)).epsilon(1e-12));
        CHECK(r.upward >= 0.0);
    }
}
