#pragma once
// Painleve VI at alpha = beta = gamma = delta = 1/8: the elliptic change of variables,
// the parametric solution in Weierstrass and theta form, its tau-dynamics and residual checks.

#include <array>
#include <string>
#include <vector>

#include "thetaforge/core.hpp"

namespace tf {

struct PVIParameters {
    cplx alpha = 0.125, beta = 0.125, gamma = 0.125, delta = 0.125;
};

// constants of the Weierstrass-form solution; the wp argument is A tau + B
struct HitchinConstants {
    cplx Aconst = 0.0, Bconst = 0.0;
};

struct LegendreIntegrals {
    cplx K, Kp, E, Ep;
};

struct XY {
    cplx x, y;
};

// x = v4^4/v3^4, y = 1/3 + x/3 - 4 wp(z|tau)/(pi^2 v3^4)
XY change_of_variables(cplx z, const ModularParameter& tau, const EvalOptions& opts = {});

// tau(x) = i K(x)/K(1-x), parameter convention m = x; inverts x = v4^4/v3^4
cplx tau_of_x(cplx x);

// wp(z|tau) of the parametric solution and the resulting (x, y)
cplx hitchin_wp(const HitchinConstants& c, const ModularParameter& tau, const EvalOptions& opts = {});
XY hitchin_solution(const HitchinConstants& c, const ModularParameter& tau, const EvalOptions& opts = {});

// theta form y = sqrt(x)/theta1^2 {pi v2^2 theta2 theta3 theta4/(theta1' + 2 pi A theta1) - theta2^2}
// at u = A K/K' + B. Same solution as the Weierstrass form with constants (-2iA, 2B).
cplx hitchin_theta_form(cplx A, cplx B, cplx x, const EvalOptions& opts = {});
HitchinConstants theta_to_weierstrass_constants(cplx A, cplx B);
// the two tau-function forms (log-derivatives in x by Richardson central differences)
cplx hitchin_tau_function_form(cplx A, cplx B, cplx x, const EvalOptions& opts = {});
cplx hitchin_tau_function_form_alt(cplx A, cplx B, cplx x, const EvalOptions& opts = {});

// (zeta, wp, wp') of the general integral at tau
struct HitchinState {
    cplx zeta, wp, wpp;
};
HitchinState hitchin_general_integral(const HitchinConstants& c, const ModularParameter& tau,
                                      const EvalOptions& opts = {});
// A, B back from a state; defined modulo (2n, 2m)
HitchinConstants recover_hitchin_constants(const HitchinState& s, const ModularParameter& tau,
                                           const EvalOptions& opts = {});

struct HitchinDerivative {
    cplx dzeta, dwp, dwpp;
    cplx wpp_used;  // the branch of sqrt(4 wp^3 - g2 wp - g3) that was used
};
// wp' is the root of 4 wp^3 - g2 wp - g3 closest to `branch_hint`.
// A vanishing root is branch-free; a hint that cannot separate two nonzero roots is BranchAmbiguity.
HitchinDerivative hitchin_field(cplx zeta_v, cplx wp_v, const ModularParameter& tau, cplx branch_hint,
                                const EvalOptions& opts = {});

LegendreIntegrals legendre_KE(cplx x);
// d/dx of (K, K', E, E') from the closure rules
std::array<cplx, 4> legendre_KE_rules(cplx x, const LegendreIntegrals& L);

// y'' - rhs(x, y, y')
cplx pvi_rhs(const PVIParameters& p, cplx x, cplx y, cplx y1);
struct PVIResidual {
    cplx value;
    double scale;
    double rel() const { return std::abs(value) / scale; }
};
PVIResidual pvi_equation_residual(const PVIParameters& p, cplx x, cplx y, cplx y1, cplx y2);

struct PVISample {
    double x;
    cplx y;
    double residual;        // relative residual of the equation
    double tau_form_diff;   // |tau-function form - y|
};
// y(x) from the Weierstrass form along tau(x); y', y'' by Richardson-extrapolated 5-point stencils
std::vector<PVISample> pvi_residual(const HitchinConstants& c, const std::vector<double>& xs,
                                    const EvalOptions& opts = {});
std::vector<PVISample> pvi_residual_serial(const HitchinConstants& c, const std::vector<double>& xs,
                                           const EvalOptions& opts = {});
std::string pvi_csv(const std::vector<PVISample>& s);

// d/dtau of ln theta1(A tau/2 + B/2|tau) - ln eta_D(tau) + i pi A^2 tau/4 (termwise) and (i/pi)(wp - zeta^2)
std::array<cplx, 2> hitchin_indefinite_integral(const HitchinConstants& c, const ModularParameter& tau,
                                                const EvalOptions& opts = {});
// d/dtau ln sigma(z|tau) from the closed tau-rule at fixed z
cplx sigma_log_tau_derivative(cplx z, const ModularParameter& tau, const EvalOptions& opts = {});

struct EllipticFormCheck {
    cplx z;          // wp-preimage of the solution at tau
    cplx zdd;        // d^2 z/dtau^2 by differences along the arc
    cplx wp_form;    // -4 wp'(2z)/pi^2
    cplx theta_form; // 4 pi eta_D^9 theta1(2z)/theta1(z)^4
};
// z(tau) tracked by continuity on tau + k h, k = -2..2
EllipticFormCheck elliptic_form_check(const HitchinConstants& c, const ModularParameter& tau, double h = 1e-3,
                                      const EvalOptions& opts = {});

}  // namespace tf
