#include <doctest.h>

#include "test_util.hpp"
#include "thetaforge/constants.hpp"
#include "thetaforge/inversion.hpp"
#include "thetaforge/theta_core.hpp"
#include "thetaforge/weierstrass.hpp"

using namespace tf;

namespace {

// wp and g2 by direct summation over w = 2m + 2n tau, |m|, |n| <= N; symmetric truncation
struct LatticeSum {
    cplx wp, g2;
};
LatticeSum lattice_sum(cplx u, cplx tau, int N) {
    cplx wp = 1.0 / (u * u), s4 = 0.0;
    for (int m = -N; m <= N; ++m)
        for (int n = -N; n <= N; ++n) {
            if (m == 0 && n == 0) continue;
            const cplx w = 2.0 * double(m) + 2.0 * double(n) * tau;
            wp += 1.0 / ((u - w) * (u - w)) - 1.0 / (w * w);
            s4 += 1.0 / (w * w * w * w);
        }
    return {wp, 60.0 * s4};
}

}  // namespace

TEST_CASE("lattice-sum oracle") {
    const cplx tau(0.15, 1.05), u(0.31, 0.22);
    const auto L = lattice_sum(u, tau, 400);
    CHECK(rel_err(wp_eval(u, tau), L.wp) < 1e-4);
    CHECK(rel_err(invariants(tau).g2, L.g2) < 1e-4);
}

TEST_CASE("cubic, periodicity and half-periods") {
    const ModularParameter t(cplx(0.12, 1.1));
    const auto g = invariants(t);
    const auto q = weierstrass_eval(0.3, t);
    CHECK(std::abs(q.wp_prime * q.wp_prime - 4.0 * q.wp * q.wp * q.wp + g.g2 * q.wp + g.g3) < 1e-10);
    const cplx u(0.3, 0.2);
    CHECK(rel_err(wp_eval(u + 2.0 + 4.0 * t.tau, t), wp_eval(u, t)) < 1e-11);
    CHECK(rel_err(zeta_eval(1.0, t), weierstrass_eta(t)) < 1e-12);
    const auto e = branch_points(t);
    CHECK(rel_err(wp_eval(1.0, t), e.e1) < 1e-12);
    CHECK(rel_err(wp_eval(1.0 + t.tau, t), e.e2) < 1e-12);
    CHECK(rel_err(wp_eval(t.tau, t), e.e3) < 1e-12);
    CHECK(lattice_distance(2.0 + 2.0 * t.tau + 0.01, t.tau) == doctest::Approx(0.01));
}

TEST_CASE("homogeneity of general lattices") {
    const cplx w(0.9, 0.3), t(0.2, 1.3), u(0.4, 0.1);
    const auto a = weierstrass_eval_lattice(u, w, w * t);
    // wp(u | w, w') = w^{-2} wp(u/w | 1, tau)
    CHECK(rel_err(a.wp, wp_eval(u / w, t) / (w * w)) < 1e-12);
    const auto li = lattice_invariants(w, w * t);
    const auto g = invariants(t);
    CHECK(rel_err(li[0], g.g2 / std::pow(w, 4)) < 1e-12);
}

TEST_CASE("twelve theta ratios through wp") {
    const ModularParameter t(cplx(0.12, 1.1));
    const cplx z(0.17, 0.06);
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k) {
            if (j == k) continue;
            const cplx r = theta_eval(j, z, t) / theta_eval(k, z, t);
            for (int f = 0; f < 2; ++f) CHECK(rel_err(theta_ratio_via_wp(j, k, z, t, f), r) < 1e-9);
        }
}

TEST_CASE("Jacobi elliptic functions") {
    const cplx u(0.4, 0.1), k2 = 0.3;
    const auto j = jacobi_sn_cn_dn(u, k2);
    CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-13);
    CHECK(std::abs(j.dn * j.dn + k2 * j.sn * j.sn - 1.0) < 1e-13);
    CHECK(std::abs(jacobi_sn_cn_dn(elliptic_K(k2), k2).sn - 1.0) < 1e-12);
    // k -> 0: sn = sin
    CHECK(std::abs(jacobi_sn_cn_dn(0.7, 1e-14).sn - std::sin(0.7)) < 1e-12);
}

TEST_CASE("half-period derivative rules by finite differences") {
    const cplx w = 1.0, w2(0.0, 1.2), z = 0.3;
    const auto D = halfperiod_derivatives(z, half_period_data(w, w2));
    const double h = 1e-5;
    auto F = [&](cplx a, cplx b) {
        const auto q = weierstrass_eval_lattice(z, a, b);
        return std::array<cplx, 4>{q.sigma, q.zeta, q.wp, q.wp_prime};
    };
    for (int i = 0; i < 4; ++i) {
        const cplx f1 = (F(w + h, w2)[i] - F(w - h, w2)[i]) / (2 * h);
        const cplx f2 = (F(w, w2 + h)[i] - F(w, w2 - h)[i]) / (2 * h);
        CHECK(rel_err(D.d_omega[i], f1) < 1e-5);
        CHECK(rel_err(D.d_omega_prime[i], f2) < 1e-5);
    }
}
