#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "thetaforge/theta_core.hpp"

using namespace tf;

TEST_CASE("theta3(0|i) closed form") {
    // pi^{1/4} / Gamma(3/4)
    const double ref = std::pow(pi, 0.25) / std::tgamma(0.75);
    CHECK(rel_err(theta_eval(3, 0.0, I), ref) < 1e-14);
}

TEST_CASE("theta1 vanishes at zero and is odd") {
    CHECK(std::abs(theta_eval(1, 0.0, cplx(0.0, 2.0))) == 0.0);
    const cplx z(0.21, -0.07), t(0.3, 1.2);
    CHECK(std::abs(theta_eval(1, -z, t) + theta_eval(1, z, t)) < 1e-15);
    for (int k = 2; k <= 4; ++k) CHECK(std::abs(theta_eval(k, -z, t) - theta_eval(k, z, t)) < 1e-15);
}

TEST_CASE("quasi-periodicity") {
    const ModularParameter t(cplx(0.1, 1.1));
    const cplx z(0.13, 0.04);
    CHECK(rel_err(theta_eval(1, z + 1.0, t), -theta_eval(1, z, t)) < 1e-13);
    // theta1(z + tau) = -q^{-1} e^{-2 pi i z} theta1(z)
    const cplx f = -std::exp(-I * pi * t.tau - 2.0 * pi * I * z);
    CHECK(rel_err(theta_eval(1, z + t.tau, t), f * theta_eval(1, z, t)) < 1e-12);
    CHECK(rel_err(theta_eval(3, z + 0.5, t), theta_eval(4, z, t)) < 1e-13);
}

TEST_CASE("characteristics: bilateral series against the dictionary") {
    const ModularParameter t(cplx(-0.2, 0.95));
    const cplx z(0.3, 0.1);
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            const cplx d = theta_char_eval({a, b}, z, t);
            CHECK(rel_err(theta_char_reduced({a, b}, z, t), d) < 1e-12);
        }
    CHECK(index_to_char(1) == ThetaCharacteristic{1, 1});
    CHECK(char_to_index({1, 1}).second == -1);
    CHECK(char_to_index({0, 0}).first == 3);
}

TEST_CASE("truncation where a trig factor vanishes") {
    // cos(2 pi z) = 0 at z = 1/4, sin(2 pi z) = 0 at z = 1/2; the next term still counts
    for (cplx tau : {cplx(0.0, 1.0), cplx(0.3, 1.1)})
        for (double x : {0.25, 0.5, 0.75}) {
            const ModularParameter t(tau);
            for (int k = 1; k <= 4; ++k) {
                const auto ch = index_to_char(k);
                const cplx ref = double(char_to_index(ch).second) * theta_char_eval(ch, x, t);
                // theta2(1/2) is a true zero; compare on the scale of the terms there
                CHECK(std::abs(theta_eval(k, x, t) - ref) < 1e-13 * std::max(1.0, std::abs(ref)));
            }
        }
    CHECK(theta_eval(1, 0.0, ModularParameter(I)) == cplx(0.0));
}

TEST_CASE("half-period shifts and theta1 reconstruction") {
    const ModularParameter t(cplx(0.05, 1.3));
    const cplx z(0.11, 0.02);
    for (long a = 0; a <= 1; ++a)
        for (long b = 0; b <= 1; ++b)
            for (long n = -1; n <= 2; ++n)
                for (long m = -1; m <= 2; ++m) {
                    const cplx direct = theta_char_eval({a, b}, z + double(n) / 2.0 + double(m) * t.tau / 2.0, t);
                    CHECK(std::abs(half_period_shift({a, b}, n, m, z, t) - direct) < 1e-12 * std::max(1.0, std::abs(direct)));
                }
    for (long a = 0; a <= 2; ++a)
        for (long b = 0; b <= 2; ++b) CHECK(rel_err(any_theta_to_theta1({a, b}, z, t), theta_eval(1, z, t)) < 1e-12);
}

TEST_CASE("termwise derivatives and the heat equation") {
    const ModularParameter t(cplx(0.2, 1.0));
    const cplx z(0.17, 0.05);
    for (int k = 1; k <= 4; ++k) {
        const double h = 1e-3;
        const cplx fd = (theta_eval(k, z + h, t) - theta_eval(k, z - h, t)) / (2 * h);
        CHECK(std::abs(theta_dz(k, 1, z, t) - fd) < 1e-5);
        // 4 pi i d/dtau = d^2/dz^2
        const cplx ft = (theta_eval(k, z, t.tau + h) - theta_eval(k, z, t.tau - h)) / (2 * h);
        CHECK(std::abs(theta_deriv(k, 0, 1, z, t) - ft) < 1e-4);
        CHECK(std::abs(4.0 * pi * I * theta_deriv(k, 0, 1, z, t) - theta_dz(k, 2, z, t)) < 1e-12);
    }
    CHECK(std::abs(theta1_prime_eval(z, t) - theta_dz(1, 1, z, t)) < 1e-13);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(ModularParameter(cplx(0.3, 0.0)), Error);
    CHECK_THROWS_AS(theta_eval(5, 0.0, I), Error);
    try {
        ModularParameter p(cplx(0.0, -1.0));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonModularTau);
    }
    EvalOptions o;
    o.max_terms = 2;
    // q close to 1 needs many terms
    CHECK_THROWS_AS(theta_eval(3, 0.0, cplx(0.0, 0.01), o), Error);
}
