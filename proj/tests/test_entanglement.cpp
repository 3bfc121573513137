#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "spincorr/entanglement.hpp"
#include "spincorr/model.hpp"
#include "test_helpers.hpp"

using namespace spincorr;
using entanglement::ConcurrenceBranch;

TEST_CASE("X-form concurrence") {
    SUBCASE("maximally mixed state") {
        const model::XStateElements x{1.0, 0.0, 1.0, 1.0, 0.0, 4.0};
        const auto r = entanglement::concurrence_x(x);
        CHECK(r.concurrence == 0.0);
        CHECK(r.branch == ConcurrenceBranch::none);
    }
    SUBCASE("strong antiferromagnetic XXX approaches the singlet") {
        const auto x = model::thermal_state_closed_form({200, 200, 200, 0, 1.0});
        const auto r = entanglement::concurrence_x(x);
        CHECK(std::abs(r.concurrence - 1.0) < 1e-3);
        CHECK(r.branch == ConcurrenceBranch::lambda1);
    }
    SUBCASE("XXZ regime with zero entanglement at all temperatures") {
        for (const double kt : {0.1, 0.5, 1.0}) {
            const auto x = model::thermal_state_closed_form({0.4, 0.4, -0.5, 0.0, kt});
            CHECK(entanglement::concurrence_x(x).concurrence == 0.0);
        }
    }
}

TEST_CASE("general Wootters concurrence") {
    SUBCASE("singlet") {
        CHECK(std::abs(entanglement::concurrence_general(testutil::psi_minus()) - 1.0) < 1e-9);
    }
    SUBCASE("Werner state at w = 1/2") {
        // w |psi-><psi-| + (1-w) I/4 has C = max(0, (3w-1)/2)
        const double w = 0.5;
        const auto bell = testutil::psi_minus();
        qmat::ComplexMatrix rho(4);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) rho(i, j) = w * bell(i, j);
            rho(i, i) += (1.0 - w) * 0.25;
        }
        CHECK(std::abs(entanglement::concurrence_general(rho) - 0.25) < 1e-9);

        // Werner is X-form; the shortcut must agree
        const model::XStateElements x{std::real(rho(0, 0)), std::real(rho(0, 3)),
                                      std::real(rho(3, 3)), std::real(rho(1, 1)),
                                      std::real(rho(1, 2)), 1.0};
        CHECK(std::abs(entanglement::concurrence_x(x).concurrence - 0.25) < 1e-9);
    }
    SUBCASE("agrees with the X-form shortcut on thermal states") {
        std::mt19937_64 rng(4257);
        for (int i = 0; i < 200; ++i) {
            const auto x = model::thermal_state_closed_form(testutil::random_params(rng));
            const double cx = entanglement::concurrence_x(x).concurrence;
            const double cg = entanglement::concurrence_general(model::to_density_matrix(x));
            CHECK(std::abs(cx - cg) < 1e-9);
        }
    }
}

TEST_CASE("entanglement of formation") {
    SUBCASE("endpoints") {
        CHECK(entanglement::eof_from_concurrence(0.0) == 0.0);
        CHECK(entanglement::eof_from_concurrence(1.0) == doctest::Approx(1.0));
    }
    SUBCASE("C = 1/4 against the binary entropy oracle") {
        const double f = 0.5 * (1.0 + std::sqrt(1.0 - 0.25 * 0.25));
        const double oracle = -f * std::log2(f) - (1.0 - f) * std::log2(1.0 - f);
        const double eof = entanglement::eof_from_concurrence(0.25);
        CHECK(std::abs(eof - oracle) < 1e-15);
        CHECK(eof == doctest::Approx(0.11761887377091781).epsilon(1e-12));
    }
    SUBCASE("strictly increasing on a fine grid") {
        double prev = entanglement::eof_from_concurrence(0.0);
        for (int i = 1; i <= 1000; ++i) {
            const double cur = entanglement::eof_from_concurrence(i * 1e-3);
            CHECK(cur > prev);
            prev = cur;
        }
    }
    SUBCASE("inputs just outside [0,1] clamp, farther out raise") {
        CHECK(entanglement::eof_from_concurrence(-5e-13) == 0.0);
        CHECK(entanglement::eof_from_concurrence(1.0 + 5e-13) == doctest::Approx(1.0));
        CHECK_THROWS_AS(entanglement::eof_from_concurrence(-1e-3), std::domain_error);
        CHECK_THROWS_AS(entanglement::eof_from_concurrence(1.01), std::domain_error);
    }
}

TEST_CASE("ferromagnetic XXX has zero entanglement of formation") {
    for (const double j : {-0.2, -1.0, -3.0})
        for (const double kt : {0.05, 0.5, 1.0, 5.0}) {
            const auto x = model::thermal_state_closed_form({j, j, j, 0.0, kt});
            CHECK(entanglement::concurrence_x(x).concurrence == 0.0);
            const double cg = entanglement::concurrence_general(model::to_density_matrix(x));
            CHECK(cg < 1e-9);
        }
}
