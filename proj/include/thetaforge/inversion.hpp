#pragma once
// Modular inversion: tau from (a, b) or J, periods of a cubic, quartic reduction and roots,
// Jacobi's tau from k^2, hypergeometric and Legendre functions.

#include <array>

#include "thetaforge/constants.hpp"
#include "thetaforge/core.hpp"

namespace tf {

// y^2 = 4x^3 - a x - b
struct CubicCurve {
    cplx a, b;
};

// y^2 = a0 x^4 + 4 a1 x^3 + 6 a2 x^2 + 4 a3 x + a4
struct QuarticCurve {
    std::array<cplx, 5> a;
    // y^2 = x^4 - 6 alpha x^2 + 4 beta x + gamma
    static QuarticCurve shortened(cplx alpha, cplx beta, cplx gamma) { return {{1.0, 0.0, -alpha, beta, gamma}}; }
};

struct PeriodPair {
    cplx omega, omega_prime;
};

// 2F1(a, b; c; x) on the principal sheet, cut [1, inf) approached from below.
// Direct series for |x| <= 0.6, otherwise Taylor re-expansion of the ODE along a path from 0.
cplx hyp2f1(cplx a, cplx b, cplx c, cplx x);

// Legendre functions off the cut (-inf, 1] (Hobson type 3); Q for mu = 0 through the 1/z^2 series
cplx legendre_P(double nu, double mu, cplx z);
cplx legendre_Q(double nu, double mu, cplx z);

// tau with J(tau) = a^3/(a^3 - 27 b^2), via P^0_{-1/6}; fundamental-domain reduced
ModularParameter modular_inversion(const CubicCurve& c, const EvalOptions& opts = {});
// the P/Q form with (nu, mu) = (-1/2, 1/3); fundamental-domain reduced
ModularParameter modular_inversion_alt(cplx J, const EvalOptions& opts = {});
// tau' from the single-valued argument i sqrt(27) g3 / (pi^6 eta^12), before reduction
cplx tau_from_g3_eta(const ModularParameter& tau, const EvalOptions& opts = {});

// a = 0 or b = 0: closed-form periods
PeriodPair exact_degenerate_periods(const CubicCurve& c, const EvalOptions& opts = {});
PeriodPair periods_from_cubic(const CubicCurve& c, const EvalOptions& opts = {});

struct QuarticInvariants {
    InvariantPair g;
    cplx J;
};
QuarticInvariants invariants_from_quartic(const QuarticCurve& q);
// J of y^2 = (1 - x^2)(1 - k^2 x^2) in Jacobi's and in Weierstrass' normalization
cplx klein_j_from_k2(cplx k2);
cplx klein_j_from_kappa2(cplx kappa2);

// shortened quartic (alpha, beta, gamma) <-> cubic w^2 = 4z^3 - (3 alpha^2 + gamma) z - (alpha^3 - gamma alpha - beta^2)
std::array<cplx, 2> quartic_cubic_transform(cplx alpha, cplx beta, cplx gamma, cplx x, cplx y);
std::array<cplx, 2> cubic_quartic_transform(cplx alpha, cplx beta, cplx gamma, cplx z, cplx w);

// v with wp(v) = alpha, wp'(v) = beta on the lattice (omega, omega'); grid over the cell, then Newton.
// The sign of v follows beta; beta ~ 0 returns the matching half-period.
cplx wp_preimage(cplx alpha, cplx beta, const PeriodPair& p, cplx g2, const EvalOptions& opts = {});

// roots of x^4 - 6 alpha x^2 + 4 beta x + gamma from 2 zeta(v/2 + omega_k) - zeta(v + 2 omega_k)
std::array<cplx, 4> quartic_roots(cplx alpha, cplx beta, cplx gamma, const EvalOptions& opts = {});

// complete elliptic integrals by the AGM, parameter m = k^2
cplx agm(cplx a, cplx b);
cplx elliptic_K(cplx m);
cplx elliptic_E(cplx m);

// tau = i K'/K, not reduced (k^2 is only Gamma(2)-invariant)
ModularParameter jacobi_tau_from_k(cplx k2, const EvalOptions& opts = {});

}  // namespace tf
