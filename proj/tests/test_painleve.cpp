#include <doctest.h>

#include "test_util.hpp"
#include "thetaforge/constants.hpp"
#include "thetaforge/numeric.hpp"
#include "thetaforge/painleve.hpp"

using namespace tf;

TEST_CASE("Painleve VI residual of the elliptic solution") {
    const HitchinConstants c{0.31, 0.2};
    const auto s = pvi_residual(c, {0.2, 0.4, 0.6});
    REQUIRE(s.size() == 3);
    for (const auto& p : s) {
        CHECK(p.residual < 1e-5);
        CHECK(p.tau_form_diff < 1e-7 * std::max(1.0, std::abs(p.y)));
    }
    // the OpenMP path keeps input order and values
    const auto r = pvi_residual_serial(c, {0.2, 0.4, 0.6});
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(r[i].x == s[i].x);
        CHECK(r[i].y == s[i].y);
    }
    CHECK(pvi_csv(s).rfind("x,", 0) == 0);
}

TEST_CASE("change of variables") {
    // tau = i: theta4^4/theta3^4 = 1/2
    const auto cv = change_of_variables(0.5, I);
    CHECK(std::abs(cv.x - 0.5) < 1e-14);
    CHECK(std::abs(tau_of_x(0.5) - I) < 1e-13);
    CHECK(std::abs(tau_of_x(0.3) - tau_of_x(0.3)) == 0.0);
    const ModularParameter t(tau_of_x(0.3));
    CHECK(std::abs(change_of_variables(0.4, t).x - 0.3) < 1e-12);
}

TEST_CASE("theta form equals the Weierstrass form") {
    const cplx A = 0.31, B(0.24, 0.11);
    for (double x : {0.2, 0.4}) {
        const auto hc = theta_to_weierstrass_constants(A, B);
        const cplx y = hitchin_solution(hc, tau_of_x(x)).y;
        CHECK(rel_err(hitchin_theta_form(A, B, x), y) < 1e-8);
        CHECK(std::abs(hitchin_tau_function_form(A, B, x) - y) < 1e-7);
        CHECK(std::abs(hitchin_tau_function_form_alt(A, B, x) - y) < 1e-7);
    }
}

TEST_CASE("Legendre integrals") {
    const auto L = legendre_KE(0.5);
    CHECK(std::abs(L.K - L.Kp) < 1e-14);
    const auto M = legendre_KE(0.3);
    CHECK(std::abs(M.E * M.Kp + M.Ep * M.K - M.K * M.Kp - pi / 2.0) < 1e-10);
    const auto R = legendre_KE_rules(0.3, M);
    const cplx dK = fd1r([](cplx s) { return legendre_KE(s).K; }, 0.3, 1e-3);
    CHECK(std::abs(R[0] - dK) < 1e-7);
    CHECK_THROWS_AS(legendre_KE(0.0), Error);
}

TEST_CASE("dynamical system of the general integral") {
    const HitchinConstants c{0.31, cplx(0.24, 0.11)};
    const ModularParameter t(cplx(0.0, 1.4));
    const auto st = hitchin_general_integral(c, t);
    const auto d = hitchin_field(st.zeta, st.wp, t, st.wpp);
    const cplx fz = fd1r([&](cplx s) { return hitchin_general_integral(c, ModularParameter(s)).zeta; }, t.tau, 1e-3);
    const cplx fw = fd1r([&](cplx s) { return hitchin_general_integral(c, ModularParameter(s)).wp; }, t.tau, 1e-3);
    CHECK(std::abs(d.dzeta - fz) < 1e-6);
    CHECK(std::abs(d.dwp - fw) < 1e-6);
    const auto rc = recover_hitchin_constants(st, t);
    CHECK(std::abs(rc.Aconst - c.Aconst) < 1e-9);
    CHECK(std::abs(rc.Bconst - c.Bconst) < 1e-9);
    const auto ii = hitchin_indefinite_integral(c, t);
    CHECK(std::abs(ii[0] - ii[1]) < 1e-6);
}

TEST_CASE("field at a branch point and ambiguous hints") {
    const ModularParameter t(cplx(0.05, 1.4));
    const auto e = branch_points(t);
    const auto g = invariants(t);
    const cplx eta = weierstrass_eta(t);
    const auto d = hitchin_field(0.3, e.e1, t, 1.0);
    CHECK(std::abs(d.wpp_used) == 0.0);
    CHECK(std::abs(d.dwp + I / pi * (4.0 * (e.e1 - eta) * e.e1 - 2.0 / 3.0 * g.g2)) < 1e-12);
    CHECK_THROWS_AS(hitchin_field(0.3, 0.7, t, 0.0), Error);
}
