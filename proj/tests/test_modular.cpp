#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "thetaforge/constants.hpp"
#include "thetaforge/modular.hpp"
#include "thetaforge/theta_core.hpp"

using namespace tf;

TEST_CASE("eta multiplier for the generators") {
    // eta(tau + 1) = e^{i pi/12} eta(tau); eta(-1/tau) = sqrt(-i tau) eta(tau)
    CHECK(std::abs(eta_multiplier({1, 1, 0, 1}) - std::exp(I * pi / 12.0)) < 1e-15);
    CHECK(std::abs(eta_multiplier({0, -1, 1, 0}) - std::exp(-I * pi / 4.0)) < 1e-15);
}

TEST_CASE("eta multiplier against the series, random matrices") {
    std::mt19937_64 g(11);
    std::uniform_int_distribution<long> D(-5, 5);
    int n = 0;
    while (n < 40) {
        const long a = D(g), b = D(g), c = D(g), d = D(g);
        if (a * d - b * c != 1) continue;
        ++n;
        const UnimodularMatrix M{a, b, c, d};
        const cplx t(0.1, 1.05);
        const cplx s = double(c) * t + double(d);
        const cplx N = eta_multiplier(M);
        CHECK(rel_err(N * std::sqrt(s) * dedekind_eta(t), dedekind_eta(M.act(t))) < 1e-9);
        CHECK(std::abs(std::pow(N, 24) - 1.0) < 1e-12);
    }
}

TEST_CASE("characteristic map round trip") {
    const UnimodularMatrix M{2, 1, 5, 3};
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            const auto m = characteristic_map(a, b, M);
            const auto r = characteristic_map_inverse(m.alpha_p, m.beta_p, M);
            CHECK(r.first == a);
            CHECK(r.second == b);
        }
}

TEST_CASE("theta transformation against the bilateral series") {
    const ModularParameter t(cplx(0.2, 0.9));
    const cplx z(0.12, 0.05);
    for (const UnimodularMatrix& M : {UnimodularMatrix{0, -1, 1, 0}, {1, 0, 3, 1}, {2, 1, 5, 3}, {-1, 2, -4, 7}})
        for (long a = 0; a <= 2; ++a)
            for (long b = 0; b <= 2; ++b) {
                const auto r = theta_transform({a, b}, M, z, t);
                const cplx lhs = theta_char_eval({r.map.alpha_p - 1, r.map.beta_p - 1}, z / r.s, ModularParameter(r.used.act(t.tau)));
                CHECK(rel_err(r.value, lhs) < 1e-10);
            }
}

TEST_CASE("Gamma(2) phases and transforms") {
    // theta2 under (1, 0, 2, 1): phase i
    CHECK(std::abs(gamma2_phase(2, 0, 0, 1, 0) - I) < 1e-15);
    const ModularParameter t(cplx(0.1, 1.1));
    const cplx z(0.1, 0.03);
    for (auto [m, n, p, q] : {std::array<long, 4>{0, 0, 1, 0}, {1, 0, 0, 0}, {0, -1, 1, 0}, {1, 1, 1, 1}}) {
        const UnimodularMatrix M{2 * n + 1, 2 * m, 2 * p, 2 * q + 1};
        if (M.det() != 1) continue;
        const cplx s = double(M.c) * t.tau + double(M.d);
        for (int k = 1; k <= 4; ++k)
            CHECK(rel_err(gamma2_theta_transform(k, m, n, p, q, z, t), theta_eval(k, z / s, ModularParameter(M.act(t.tau)))) < 1e-10);
    }
}

TEST_CASE("theta' at shifted arguments and half-periods") {
    const ModularParameter t(cplx(0.1, 1.1));
    // theta1'(0) = 2 pi eta^3
    CHECK(rel_err(theta_prime_halfperiod_constant({1, 1}, 0, 0, t), -2.0 * pi * std::pow(dedekind_eta(t), 3)) < 1e-12);
    CHECK(std::abs(theta_prime_halfperiod_constant({0, 0}, 0, 0, t)) < 1e-14);
    const cplx z(0.2, 0.05);
    for (long n = 0; n <= 1; ++n)
        for (long m = 0; m <= 1; ++m)
            CHECK(std::abs(theta_prime_shift({0, 1}, n, m, z, t) -
                           theta_char_dz({0, 1}, 1, z + double(n) / 2.0 + double(m) * t.tau / 2.0, t)) < 1e-11);
}

TEST_CASE("fundamental domain reduction") {
    const cplx t0(0.37, 0.02);
    const auto [t, M] = reduce_to_fundamental_domain(t0);
    CHECK(std::abs(t.tau.real()) <= 0.5 + 1e-14);
    CHECK(std::abs(t.tau) >= 1.0 - 1e-14);
    CHECK(M.det() == 1);
    CHECK(std::abs(M.act(t0) - t.tau) < 1e-12);
    CHECK_THROWS_AS(require_unimodular({1, 1, 1, 1}), Error);
}
