#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "critline/special_functions.hpp"

using namespace critline;

namespace {

constexpr double euler_gamma = 0.577215664901532860606512090082;

double rel_err(cd got, cd want) { return std::abs(got - want) / std::abs(want); }

// Reference values computed once with a 30-digit Euler-Maclaurin /
// Lanczos evaluation and frozen here.
const cd zeta_half{-1.46035450880958681288949915252, 0.0};
const cd zeta_half_3i{0.532736670974232883923384121681, -0.078896513425833382656205086906};
const cd zeta_half_30i{-0.120642287590043699914021147312, -0.583691214763706288757635825664};
const cd hz_half_3i_03{-1.47013392686763887184074486372, -1.27002388169092241271996830957};
const cd hz_half_40i_07{-0.0298336073415080885274273787789, -0.19630097789795221286446781968};
const cd gamma_half_2i{0.0898551767064316358142478129454, -0.0604937602928875684797676794408};
const cd gamma_03_17i{0.0710918325376803936681859025007, -0.139377423262322896872001973279};
const cd psi_half_5i{1.60775932160718786612023295612, 1.57079632679482527048700362422};

}  // namespace

TEST_CASE("gamma closed forms") {
    CHECK(rel_err(gamma_complex(cd{0.5, 0.0}), cd{std::sqrt(std::numbers::pi), 0.0}) < 1e-13);
    CHECK(rel_err(gamma_complex(cd{5.0, 0.0}), cd{24.0, 0.0}) < 1e-13);
    CHECK(rel_err(gamma_complex(cd{1.0, 0.0}), cd{1.0, 0.0}) < 1e-13);
    CHECK(rel_err(gamma_complex(cd{0.5, 2.0}), gamma_half_2i) < 1e-12);
    CHECK(rel_err(gamma_complex(cd{0.3, 1.7}), gamma_03_17i) < 1e-12);  // reflection path
}

TEST_CASE("gamma reflection product on the critical line") {
    // Gamma(1/2 - it) Gamma(1/2 + it) = pi / cosh(pi t)
    for (int i = 0; i <= 50; ++i) {
        const double t = -20.0 + 40.0 * i / 50.0;
        const cd product = gamma_complex(cd{0.5, -t}) * gamma_complex(cd{0.5, t});
        const double expected = std::numbers::pi / std::cosh(std::numbers::pi * t);
        CHECK(std::abs(product * std::cosh(std::numbers::pi * t) / std::numbers::pi - 1.0) < 1e-12);
        CHECK(std::abs(product.real() - expected) < 1e-12 * std::abs(expected) + 1e-300);
    }
}

TEST_CASE("gamma recurrence property") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> re(-3.0, 6.0), im(-20.0, 20.0);
    for (int trial = 0; trial < 100; ++trial) {
        cd s{re(rng), im(rng)};
        if (std::abs(s.imag()) < 0.1) s += cd{0.0, 0.2};  // keep clear of the pole line
        CHECK(rel_err(gamma_complex(s + 1.0), s * gamma_complex(s)) < 1e-12);
    }
}

TEST_CASE("gamma pole rejection") {
    CHECK_THROWS_AS(gamma_complex(cd{0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(gamma_complex(cd{-3.0, 0.0}), std::domain_error);
}

TEST_CASE("digamma closed forms") {
    CHECK(std::abs(digamma(cd{1.0, 0.0}).real() + euler_gamma) < 1e-13);
    CHECK(std::abs(digamma(cd{1.0, 0.0}).imag()) < 1e-15);
    const double psi_half = -euler_gamma - 2.0 * std::log(2.0);
    CHECK(std::abs(digamma(cd{0.5, 0.0}).real() - psi_half) < 1e-13);
    CHECK(rel_err(digamma(cd{0.5, 5.0}), psi_half_5i) < 1e-12);
    CHECK(std::abs(digamma(cd{0.3, 0.0}).real() - (-3.50252422220013298896449450737)) < 1e-12);
}

TEST_CASE("digamma growth at large height") {
    // |psi(1/2 + 40i)| should be of size log(41), comfortably below 2 log(41).
    const double mag = std::abs(digamma(cd{0.5, 40.0}));
    CHECK(mag <= 2.0 * std::log(41.0));
    CHECK(mag >= 0.5 * std::log(41.0));
}

TEST_CASE("digamma recurrence property") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> re(-4.0, 8.0), im(-30.0, 30.0);
    for (int trial = 0; trial < 100; ++trial) {
        cd s{re(rng), im(rng)};
        if (std::abs(s.imag()) < 0.1) s += cd{0.0, 0.3};
        CHECK(std::abs(digamma(s + 1.0) - digamma(s) - 1.0 / s) < 1e-12 * (1.0 + std::abs(digamma(s))));
    }
}

TEST_CASE("hurwitz zeta closed forms and frozen references") {
    CHECK(rel_err(hurwitz_zeta(cd{2.0, 0.0}, 1.0), cd{std::numbers::pi * std::numbers::pi / 6.0, 0.0}) < 1e-13);
    CHECK(rel_err(hurwitz_zeta(cd{0.5, 0.0}, 1.0), zeta_half) < 1e-13);
    CHECK(rel_err(hurwitz_zeta(cd{2.0, 0.0}, 0.25), cd{17.1973291545071107392713191193, 0.0}) < 1e-13);
    CHECK(rel_err(hurwitz_zeta(cd{0.5, 3.0}, 0.3), hz_half_3i_03) < 1e-12);
    CHECK(rel_err(hurwitz_zeta(cd{0.5, 40.0}, 0.7), hz_half_40i_07) < 1e-11);
}

TEST_CASE("hurwitz recurrence zeta(s,a) = zeta(s,a+1) + a^{-s}") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> re(-1.0, 4.0), im(-40.0, 40.0), aa(0.05, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        cd s{re(rng), im(rng)};
        if (std::abs(s - cd{1.0, 0.0}) < 0.1) s += cd{0.5, 0.0};
        const double a = aa(rng);
        const cd lhs = hurwitz_zeta(s, a);
        const cd rhs = hurwitz_zeta(s, a + 1.0) + detail::pow_real(a, -s);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("riemann zeta values and pole expansion") {
    CHECK(rel_err(riemann_zeta(cd{2.0, 0.0}), cd{std::numbers::pi * std::numbers::pi / 6.0, 0.0}) < 1e-13);
    CHECK(std::abs(riemann_zeta(cd{0.0, 0.0}) - cd{-0.5, 0.0}) < 1e-13);
    CHECK(rel_err(riemann_zeta(cd{1.5, 0.0}), cd{2.61237534868548834334856756792, 0.0}) < 1e-13);
    CHECK(rel_err(riemann_zeta(cd{0.5, 3.0}), zeta_half_3i) < 1e-12);
    CHECK(rel_err(riemann_zeta(cd{0.5, 30.0}), zeta_half_30i) < 1e-11);
    // zeta(1 + it) = 1/(it) + O(1) near the pole
    const cd s{1.0, 0.01};
    CHECK(std::abs(riemann_zeta(s) - 1.0 / cd{0.0, 0.01}) < 2.0);
    CHECK_THROWS_AS(riemann_zeta(cd{1.0, 0.0}), std::domain_error);
}

TEST_CASE("zeta_q strips the Euler factor at q") {
    const double z2 = std::numbers::pi * std::numbers::pi / 6.0;
    CHECK(rel_err(zeta_q(cd{2.0, 0.0}, 5), cd{(1.0 - 1.0 / 25.0) * z2, 0.0}) < 1e-13);
    const double z3 = 1.20205690315959428539973816151;
    CHECK(rel_err(zeta_q(cd{3.0, 0.0}, 2), cd{(7.0 / 8.0) * z3, 0.0}) < 1e-13);
    // factor tends to 1 monotonically as q grows
    double prev = 0.0;
    for (std::uint32_t q : {5u, 11u, 101u, 1009u}) {
        const double v = zeta_q(cd{2.0, 0.0}, q).real();
        CHECK(v > prev);
        CHECK(v < z2);
        prev = v;
    }
}

TEST_CASE("policy validation") {
    PrecisionPolicy bad;
    bad.euler_maclaurin_terms = 4;
    CHECK_THROWS_AS(hurwitz_zeta(cd{2.0, 0.0}, 1.0, bad), std::invalid_argument);
    bad = {};
    bad.shift_threshold = 3.0;
    CHECK_THROWS_AS(hurwitz_zeta(cd{2.0, 0.0}, 1.0, bad), std::invalid_argument);
    CHECK_THROWS_AS(hurwitz_zeta(cd{2.0, 0.0}, -1.0), std::domain_error);
}
