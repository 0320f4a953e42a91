#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "thetaforge/constants.hpp"
#include "thetaforge/theta_core.hpp"

using namespace tf;

TEST_CASE("Jacobi identity and derivative formula") {
    for (cplx t : {cplx(0.0, 1.0), cplx(0.4, 0.95), cplx(-0.3, 2.2)}) {
        const auto v = nullwerte(t);
        CHECK(rel_err(std::pow(v.v2, 4) + std::pow(v.v4, 4), std::pow(v.v3, 4)) < 1e-13);
        CHECK(rel_err(v.v1prime, pi * v.v2 * v.v3 * v.v4) < 1e-13);
        CHECK(rel_err(2.0 * std::pow(dedekind_eta(t), 3), v.v2 * v.v3 * v.v4) < 1e-13);
    }
}

TEST_CASE("closed forms at tau = i") {
    // eta(i) = Gamma(1/4) / (2 pi^{3/4})
    CHECK(rel_err(dedekind_eta(I), std::tgamma(0.25) / (2.0 * std::pow(pi, 0.75))) < 1e-14);
    // square lattice with half-periods 1, i: Legendre's relation gives zeta(1) = pi/4
    CHECK(rel_err(weierstrass_eta(I), pi / 4.0) < 1e-14);
    const auto g = invariants(I);
    CHECK(std::abs(g.g3) < 1e-12);
    CHECK(rel_err(klein_j(I), 1.0) < 1e-12);
}

TEST_CASE("Klein J spot values") {
    CHECK(std::abs(klein_j(cplx(0.5, std::sqrt(3.0) / 2.0))) < 1e-10);
    CHECK(rel_err(klein_j(cplx(0.0, std::sqrt(2.0))), 125.0 / 27.0) < 1e-12);
    // j(2i) = 66^3
    CHECK(rel_err(klein_j(cplx(0.0, 2.0)), 287496.0 / 1728.0) < 1e-11);
}

TEST_CASE("invariant routes and representations agree") {
    const ModularParameter t(cplx(0.2, 1.05));
    const auto a = invariants_lambert(t);
    const auto v = nullwerte(t);
    const auto b = invariants_theta(v);
    CHECK(rel_err(b.g2, a.g2) < 1e-12);
    CHECK(rel_err(b.g3, a.g3) < 1e-12);
    for (auto [al, be] : {std::pair{1, 0}, {0, 1}, {1, 1}}) {
        const auto c = invariants_ab(al, be, v);
        CHECK(rel_err(c.g2, a.g2) < 1e-12);
        CHECK(rel_err(c.g3, a.g3) < 1e-12);
    }
    CHECK_THROWS_AS(invariants_ab(0, 0, v), Error);
}

TEST_CASE("branch points") {
    const ModularParameter t(cplx(0.1, 1.2));
    const auto e = branch_points(t);
    const auto g = invariants(t);
    CHECK(std::abs(e.e1 + e.e2 + e.e3) < 1e-12);
    for (cplx x : {e.e1, e.e2, e.e3}) CHECK(std::abs(4.0 * x * x * x - g.g2 * x - g.g3) < 1e-11);
}

TEST_CASE("eta derivatives") {
    const ModularParameter t(cplx(0.0, 1.3));
    const double h = 1e-4;
    const cplx fd = (weierstrass_eta(t.tau + h) - weierstrass_eta(t.tau - h)) / (2 * h);
    CHECK(std::abs(weierstrass_eta_deriv(t, 1) - fd) < 1e-6);
    const cplx fd2 = (dedekind_eta(t.tau + h) - dedekind_eta(t.tau - h)) / (2 * h);
    CHECK(std::abs(dedekind_eta_deriv(t, 1) - fd2) < 1e-7);
}
