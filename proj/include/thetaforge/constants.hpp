#pragma once
// Modular "constants": nullwerte, Weierstrass eta, Dedekind eta, g2/g3, e_lambda, Klein J.
// Weierstrass eta is always eta_w / weierstrass_eta; Dedekind eta is always dedekind_eta.

#include <map>
#include <utility>

#include "thetaforge/core.hpp"

namespace tf {

struct NullwerteQuadruple {
    cplx v2, v3, v4;
    cplx v1prime;
};

struct InvariantPair {
    cplx g2, g3;
};

struct BranchPoints {
    cplx e1, e2, e3;  // e01, e11, e10
    std::map<std::pair<int, int>, cplx> e_gamma_delta;
};

NullwerteQuadruple nullwerte(const ModularParameter& tau, const EvalOptions& opts = {});

// Lambert series 2 pi^2 (1/24 - sum sigma_1(n) q^{2n}) and its termwise tau-derivatives
cplx weierstrass_eta(const ModularParameter& tau, const EvalOptions& opts = {});
cplx weierstrass_eta_deriv(const ModularParameter& tau, int j, const EvalOptions& opts = {});

// pentagonal series e^{pi i tau/12} sum (-1)^k e^{(3k^2+k) pi i tau} and its tau-derivatives
cplx dedekind_eta(const ModularParameter& tau, const EvalOptions& opts = {});
cplx dedekind_eta_deriv(const ModularParameter& tau, int j, const EvalOptions& opts = {});

// both routes; returns the Lambert values and throws RouteMismatch beyond 1e-11
InvariantPair invariants(const ModularParameter& tau, const EvalOptions& opts = {});
InvariantPair invariants_lambert(const ModularParameter& tau, const EvalOptions& opts = {});
InvariantPair invariants_theta(const NullwerteQuadruple& v);
// (alpha,beta)-representation through theta[alpha;0]^4 and theta[0;beta]^4, (alpha,beta) != (0,0)
InvariantPair invariants_ab(int alpha, int beta, const NullwerteQuadruple& v);

// e_{gamma delta} = pi^2/12 (<gamma> theta_{0 delta}^4 - <delta> theta_{gamma 0}^4)
cplx e_gamma_delta(int gamma, int delta, const NullwerteQuadruple& v);
BranchPoints branch_points(const ModularParameter& tau, const EvalOptions& opts = {});

cplx klein_j(const ModularParameter& tau, const EvalOptions& opts = {});
cplx klein_j_from(const InvariantPair& g);

// reduced characteristic nullwert theta[a;b](0|tau) with a,b in {0,1} from the quadruple
cplx nullwert_ab(int alpha, int beta, const NullwerteQuadruple& v);

inline int ang(long n) { return (n % 2 == 0) ? 1 : -1; }  // <n> = (-1)^n

}  // namespace tf
