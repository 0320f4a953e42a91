#pragma once
// Theta series: theta_1..theta_4, theta_1', characteristics, reduction and half-period shifts.
//
// Conventions: q = exp(i pi tau),
//   theta[a;b](z|tau) = sum_k exp(pi i (k+a/2)^2 tau + 2 pi i (k+a/2)(z+b/2)),
//   theta1 = -theta[1;1], theta2 = theta[1;0], theta3 = theta[0;0], theta4 = theta[0;1].

#include <utility>

#include "thetaforge/core.hpp"

namespace tf {

// theta_k(z|tau), one-sided trigonometric series
cplx theta_eval(int k, cplx z, const ModularParameter& tau, const EvalOptions& opts = {});

// d^n/dz^n theta_k(z|tau), termwise
cplx theta_dz(int k, int n, cplx z, const ModularParameter& tau, const EvalOptions& opts = {});

// mixed derivative d^nz/dz^nz d^nt/dtau^nt through the heat equation 4 pi i d_tau = d_zz
cplx theta_deriv(int k, int nz, int nt, cplx z, const ModularParameter& tau, const EvalOptions& opts = {});

cplx theta1_prime_eval(cplx z, const ModularParameter& tau, const EvalOptions& opts = {});

// bilateral series with arbitrary integer characteristics, n-th z-derivative
cplx theta_char_eval(ThetaCharacteristic ch, cplx z, const ModularParameter& tau, const EvalOptions& opts = {});
cplx theta_char_dz(ThetaCharacteristic ch, int n, cplx z, const ModularParameter& tau,
                   const EvalOptions& opts = {});

// (alpha mod 2, beta mod 2) and the sign: theta[a;b] = sign * theta[reduced]
std::pair<ThetaCharacteristic, int> char_reduce(ThetaCharacteristic ch);

// reduced characteristic -> (k, sign) with theta[a;b] = sign * theta_k; k = 1 for (1,1) gives sign -1
std::pair<int, int> char_to_index(ThetaCharacteristic ch);
ThetaCharacteristic index_to_char(int k);

// theta[a;b] through the dictionary and one-sided series
cplx theta_char_reduced(ThetaCharacteristic ch, cplx z, const ModularParameter& tau, const EvalOptions& opts = {});

// theta[a;b](z + n/2 + m tau/2 | tau) from the shifted characteristic
cplx half_period_shift(ThetaCharacteristic ch, long n, long m, cplx z, const ModularParameter& tau,
                       const EvalOptions& opts = {});

// theta1(z|tau) rebuilt from theta[a-1;b-1] at a shifted argument
cplx any_theta_to_theta1(ThetaCharacteristic ch, cplx z, const ModularParameter& tau, const EvalOptions& opts = {});

}  // namespace tf
