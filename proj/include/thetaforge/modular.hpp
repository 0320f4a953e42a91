#pragma once
// Gamma(1)/Gamma(2) transformation laws, the eta multiplier and fundamental-domain reduction.

#include <utility>

#include "thetaforge/core.hpp"

namespace tf {

struct UnimodularMatrix {
    long a = 1, b = 0, c = 0, d = 1;
    long det() const { return a * d - b * c; }
    cplx act(cplx tau) const { return (double(a) * tau + double(b)) / (double(c) * tau + double(d)); }
    UnimodularMatrix operator*(const UnimodularMatrix& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    UnimodularMatrix neg() const { return {-a, -b, -c, -d}; }
    bool operator==(const UnimodularMatrix&) const = default;
};

void require_unimodular(const UnimodularMatrix& M);

struct CharacteristicMap {
    long alpha_p = 0, beta_p = 0;
    cplx e_multiplier{1.0, 0.0};
};

struct TransformResult {
    cplx value;
    CharacteristicMap map;
    UnimodularMatrix used;  // the matrix actually applied (c >= 0 after normalization)
    cplx s;                 // c tau + d of `used`
};

// tau* = M tau with |Re tau*| <= 1/2, |tau*| >= 1
std::pair<ModularParameter, UnimodularMatrix> reduce_to_fundamental_domain(const ModularParameter& tau);

// N(M) with eta(M tau) = N sqrt(c tau + d) eta(tau), principal square root, any sign of c
cplx eta_multiplier(const UnimodularMatrix& M);

// (alpha', beta') = (d alpha - c beta, -b alpha + a beta) and its inverse
CharacteristicMap characteristic_map(long alpha, long beta, const UnimodularMatrix& M);
std::pair<long, long> characteristic_map_inverse(long alpha_p, long beta_p, const UnimodularMatrix& M);

// Right-hand side E N^3 sqrt(s) e^{pi i c z^2/s} theta[alpha-1;beta-1](z|tau).
// Equals theta[alpha'-1;beta'-1](z/s | M tau) with s = c tau + d of result.used.
TransformResult theta_transform(ThetaCharacteristic ch, const UnimodularMatrix& M, cplx z, const ModularParameter& tau,
                                const EvalOptions& opts = {});

// theta_k(z/s | M tau) for M = (2n+1, 2m, 2p, 2q+1) in Gamma(2), from theta_k(z|tau)
cplx gamma2_theta_transform(int k, long m, long n, long p, long q, cplx z, const ModularParameter& tau,
                            const EvalOptions& opts = {});
cplx gamma2_phase(int k, long m, long n, long p, long q);

// d/dz theta[alpha;beta] at z + n/2 + m tau/2, from theta_1, theta_1' and shifted characteristics at z
cplx theta_prime_shift(ThetaCharacteristic ch, long n, long m, cplx z, const ModularParameter& tau,
                       const EvalOptions& opts = {});
// the same derivative at the half-period n/2 + m tau/2 itself
cplx theta_prime_halfperiod_constant(ThetaCharacteristic ch, long n, long m, const ModularParameter& tau,
                                     const EvalOptions& opts = {});

// theta_1'(z/s | M tau) from theta_1 and theta_1' at (z|tau)
cplx theta1_prime_transform(const UnimodularMatrix& M, cplx z, const ModularParameter& tau,
                            const EvalOptions& opts = {});

}  // namespace tf
