#pragma once
// Weierstrass sigma, zeta, wp, wp' through theta bridges; half-periods (1, tau) unless a lattice is given.

#include <array>

#include "thetaforge/core.hpp"

namespace tf {

struct WeierstrassQuadruple {
    cplx sigma, zeta, wp, wp_prime;
};

struct HalfPeriodData {
    cplx omega, omega_prime;
    cplx eta, eta_prime;  // zeta(omega), zeta(omega')
    int s = 1;            // sign Im(omega'/omega)
};

// Argument u in the lattice 2Z + 2 tau Z. Internally z = u/2 is the theta argument.
WeierstrassQuadruple weierstrass_eval(cplx u, const ModularParameter& tau, const EvalOptions& opts = {});
cplx wp_eval(cplx u, const ModularParameter& tau, const EvalOptions& opts = {});
cplx zeta_eval(cplx u, const ModularParameter& tau, const EvalOptions& opts = {});

// general half-periods; tau = omega'/omega, or -omega'/omega when that has negative imaginary part
WeierstrassQuadruple weierstrass_eval_lattice(cplx u, cplx omega, cplx omega_prime, const EvalOptions& opts = {});
HalfPeriodData half_period_data(cplx omega, cplx omega_prime, const EvalOptions& opts = {});
// g2, g3 of the lattice with half-periods (omega, omega')
std::array<cplx, 2> lattice_invariants(cplx omega, cplx omega_prime, const EvalOptions& opts = {});

// distance from u to the nearest point of 2Z + 2 tau Z
double lattice_distance(cplx u, cplx tau);

// theta_j/theta_k through wp, wp' (form 0) or zeta differences (form 1) at the related moduli
cplx theta_ratio_via_wp(int j, int k, cplx z, const ModularParameter& tau, int form = 0, const EvalOptions& opts = {});

struct JacobiTriple {
    cplx sn, cn, dn;
};
JacobiTriple jacobi_sn_cn_dn(cplx u, cplx k2, const EvalOptions& opts = {});

// d/d omega and d/d omega' of (sigma, zeta, wp, wp') at fixed z
struct HalfPeriodDerivatives {
    std::array<cplx, 4> d_omega;
    std::array<cplx, 4> d_omega_prime;
};
HalfPeriodDerivatives halfperiod_derivatives(cplx z, const HalfPeriodData& hp, const EvalOptions& opts = {});

// d/du of (zeta, wp, wp')
std::array<cplx, 3> z_field_weier(const WeierstrassQuadruple& q, cplx g2);

// d/dtau of (sigma, zeta, wp, wp') at fixed u for half-periods (1, tau)
std::array<cplx, 4> tau_field_weier(cplx u, const WeierstrassQuadruple& q, cplx eta, cplx g2);

}  // namespace tf
