#include <doctest.h>

#include "test_util.hpp"
#include "thetaforge/constants.hpp"
#include "thetaforge/power_series.hpp"
#include "thetaforge/theta_core.hpp"

using namespace tf;

TEST_CASE("table seeds") {
    const auto A = table_A(4, 4);
    CHECK(A.at(0, 0) == 1);
    CHECK(A.at(1, 0) == -1);
    CHECK(A.at(0, 1) == -3);
    CHECK(A.at(-1, 0) == 0);
    CHECK(table_B(0, 4, 4).at(0, 0) == 1);
    CHECK(table_B(1, 4, 4).at(0, 0) == 1);
    const auto G = table_G(6);
    CHECK(G.at(0, 0) == 1);
    CHECK(G.at(2, 0) == -6);
    CHECK(G.at(0, 2) == -6);
}

TEST_CASE("G symmetry laws") {
    const int N = 16;
    const auto G = table_G(N);
    for (int m = 0; m <= N; ++m)
        for (int n = 0; m + n <= N; ++n) CHECK(G.at(n, m) == (((m + n) % 2) ? -1 : 1) * G.at(m, n));
    const auto G10 = table_G_ab(1, 0, N), G01 = table_G_ab(0, 1, N), G00 = table_G_ab(0, 0, N);
    for (int m = 0; m <= N; ++m)
        for (int n = 0; m + n <= N; ++n) {
            const int p = ((m + n) % 2) ? -1 : 1;
            CHECK(G10.at(n, m) == G10.at(m, n));
            CHECK(G00.at(n, m) == p * G00.at(m, n));
            CHECK(G01.at(m, n) == p * G10.at(m, n));
        }
}

TEST_CASE("sigma coefficients") {
    const cplx g2(1.3, -0.2), g3(0.4, 0.7);
    CHECK(rel_err(sigma_coefficient(0, g2, g3), 1.0) < 1e-15);
    CHECK(std::abs(sigma_coefficient(1, g2, g3)) < 1e-15);
    CHECK(rel_err(sigma_coefficient(2, g2, g3), -g2 / 240.0) < 1e-15);
    CHECK(rel_err(sigma_coefficient(3, g2, g3), -g3 / 840.0) < 1e-15);
}

TEST_CASE("sigma series against the theta bridge") {
    const ModularParameter t(cplx(0.0, 1.0));
    const auto g = invariants(t);
    const cplx u(0.3, 0.1);
    // sigma(u) = theta1(u/2) e^{eta u^2/2} / (pi eta_D^3) on the lattice 2Z + 2iZ
    const cplx ref = theta_eval(1, u / 2.0, t) * std::exp(weierstrass_eta(t) * u * u / 2.0) / (pi * std::pow(dedekind_eta(t), 3));
    CHECK(rel_err(sigma_series(u, g.g2, g.g3, 12), ref) < 1e-13);
    CHECK(rel_err(sigma_series_grouped(u, g.g2, g.g3, 12), ref) < 1e-13);
    const cplx e(0.3, 0.1), g2c(0.5, -0.2);
    const cplx g3c = 4.0 * e * e * e - g2c * e;
    CHECK(rel_err(xi_series(0, 0.4, e, g2c, 14), sigma_series(0.4, g2c, g3c, 14)) < 1e-13);
    const auto r = halphen_pde_residual(1, 0.3, e, g2c, 14);
    CHECK(r.first < 1e-7);
    CHECK(r.second < 1e-7);
}

TEST_CASE("power series against the trigonometric series") {
    for (cplx tau : {cplx(0.0, 1.0), cplx(0.3, 1.1), cplx(-0.5, 1.5)})
        for (int k = 1; k <= 4; ++k) {
            const auto ch = index_to_char(k);
            const double s = char_to_index(ch).second;
            for (cplx z : {cplx(0.25, 0.0), cplx(0.1, -0.2), cplx(0.0, 0.25)}) {
                const cplx ref = theta_eval(k, z, tau);
                CHECK(rel_err(s * theta_power_series(ch, z, tau, 24, SeriesRep::AllChecked), ref) < 1e-10);
            }
        }
    CHECK(rel_err(theta1_prime_power_series(0.2, cplx(0.3, 1.1)), theta1_prime_eval(0.2, cplx(0.3, 1.1))) < 1e-10);
}

TEST_CASE("nullwert tau-derivatives from the series") {
    const ModularParameter t(cplx(0.0, 1.2));
    const auto d = series_tau_derivative({1, 0}, t, 10, 2);
    CHECK(rel_err(d[1], theta_deriv(2, 0, 1, 0.0, t)) < 1e-10);
    CHECK(rel_err(d[2], theta_deriv(2, 0, 2, 0.0, t)) < 1e-9);
}
