#include <doctest.h>

#include "test_util.hpp"
#include "thetaforge/constants.hpp"
#include "thetaforge/numeric.hpp"
#include "thetaforge/theta_core.hpp"
#include "thetaforge/theta_ode.hpp"

using namespace tf;

namespace {

double diff(const ThetaState& a, const ThetaState& b) {
    double m = 0.0;
    for (int i = 0; i < 5; ++i) m = std::max(m, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
    return m;
}

const cplx kz(0.2, 0.05);
const ModularParameter kt(cplx(0.1, 1.1));

}  // namespace

TEST_CASE("z- and tau-fields on canonical data") {
    const auto S = canonical_state(kz, kt);
    const auto C = canonical_coefficients(kt);
    ThetaState fz, ft;
    for (int i = 0; i < 5; ++i) {
        fz[i] = fd1r([&](cplx w) { return canonical_state(w, kt)[i]; }, kz, 1e-3);
        ft[i] = fd1r([&](cplx t) { return canonical_state(kz, ModularParameter(t))[i]; }, kt.tau, 1e-3);
    }
    CHECK(diff(z_field(S, C), fz) < 1e-9);
    CHECK(diff(tau_field(S, C), ft) < 1e-9);
    CHECK(std::abs(tau_field_theta2_alt(S, C) - tau_field(S, C).t2) < 1e-13);
}

TEST_CASE("constants' systems") {
    const auto C = canonical_coefficients(kt);
    CoefficientState d;
    for (int i = 0; i < 3; ++i) d[i] = theta_deriv(i + 2, 0, 1, 0.0, kt);
    d.eta = weierstrass_eta_deriv(kt, 1);
    const auto f = constants_field_canonical(C);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(f[i] - d[i]) < 1e-12);
    CHECK_THROWS_AS(constants_field_ab(0, 0, C), Error);
    const auto in = algebraic_integrals(canonical_state(kz, kt), C);
    CHECK(std::abs(in.A4 - 1.0) < 1e-13);
    CHECK(std::abs(in.B4 - 1.0) < 1e-13);
    CHECK(std::abs(in.Afrak4 - 1.0) < 1e-13);
}

TEST_CASE("scalar equations and Darboux-Halphen") {
    for (const auto& [name, r] : scalar_equation_residuals(kt, kz)) {
        INFO(name);
        CHECK(r.rel() < 1e-10);
    }
    for (const auto& [name, r] : darboux_halphen_residuals(kt)) {
        INFO(name);
        CHECK(r.rel() < 1e-8);
    }
}

TEST_CASE("theta1 = 0 is rejected") {
    const auto C = canonical_coefficients(kt);
    CHECK_THROWS_AS(renormalized_fields(canonical_state(0.0, kt), C), Error);
}

TEST_CASE("canonical reduction of the general solution") {
    const SolutionConstants unit{1.0, 1.0, 1.0, 0.0, 0.0, 1.0, I, {1, 0, 0, 1}, 1.0};
    const auto [S, C] = noncanonical_solution(unit, kz, kt.tau);
    CHECK(diff(S, canonical_state(kz, kt)) < 1e-13);
}

TEST_CASE("noncanonical solution satisfies both fields") {
    SolutionConstants K;
    K.Acap = {1.1, 0.1};
    K.Bcap = {0.9, -0.05};
    K.Ccap = {0.7, 0.2};
    K.Dcap = {0.03, 0.02};
    K.Ecap = {0.05, -0.03};
    K.d_const = {1.05, 0.1};
    K.matrix = {1, 1, 1, 2};
    const cplx tv(0.21, 1.13);
    const auto [S, C] = noncanonical_solution(K, kz, tv);
    ThetaState a, b;
    for (int i = 0; i < 5; ++i) {
        a[i] = fd1r([&](cplx w) { return noncanonical_solution(K, w, tv).first[i]; }, kz, 1e-3);
        b[i] = fd1r([&](cplx t) { return noncanonical_solution(K, kz, t).first[i]; }, tv, 1e-3);
    }
    CHECK(diff(z_field(S, C), a) < 1e-8);
    CHECK(diff(tau_field(S, C), b) < 1e-8);
    const auto in = algebraic_integrals(S, C);
    CHECK(rel_err(in.A4, std::pow(K.Acap, 4)) < 1e-12);
    CHECK(rel_err(in.B4, std::pow(K.Bcap, 4)) < 1e-12);
    const auto g = gradient_flow_check(C, in);
    CHECK(g.residual < 1e-9);
    CHECK(g.det < 1e-9);
}

TEST_CASE("flip symmetry") {
    const auto S = canonical_state(kz, kt);
    const auto C = canonical_coefficients(kt);
    CHECK(diff(z_field(flip_pair(S, 1, 3), C), flip_pair(z_field(S, C), 1, 3)) < 1e-14);
}
