#include "thetaforge/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "thetaforge/modular.hpp"
#include "thetaforge/theta_core.hpp"
#include "thetaforge/weierstrass.hpp"

namespace tf {

namespace {

const cplx rho = cplx(0.5, std::sqrt(3.0) / 2.0);

ModularParameter reduced(cplx t) {
    if (!(t.imag() > 0.0)) throw Error(ErrorCode::BranchAmbiguity, "inversion produced tau outside the upper half-plane");
    return reduce_to_fundamental_domain(ModularParameter(t)).first;
}

// P^0_{-1/6}(z) = 2F1(1/6, 5/6; 1; (1-z)/2), lower side of the cut
cplx p_minus_sixth(cplx z) { return hyp2f1(1.0 / 6.0, 5.0 / 6.0, 1.0, (1.0 - z) / 2.0); }

cplx tau_from_pq(cplx w) {
    return (pi * I * legendre_P(-0.5, 1.0 / 3.0, w) / legendre_Q(-0.5, 1.0 / 3.0, w) - 1.0) * std::exp(I * pi / 3.0);
}

}  // namespace

ModularParameter modular_inversion(const CubicCurve& c, const EvalOptions&) {
    if (c.a == 0.0) throw Error(ErrorCode::EquianharmonicBranch, "a = 0: use exact_degenerate_periods");
    cplx a3 = c.a * c.a * c.a, b2 = 27.0 * c.b * c.b;
    if (std::abs(a3 - b2) <= 1e-14 * (std::abs(a3) + std::abs(b2)))
        throw Error(ErrorCode::Degenerate, "a^3 = 27 b^2");
    cplx s = std::sqrt(b2 / a3);
    return reduced(I * p_minus_sixth(-s) / p_minus_sixth(s));
}

ModularParameter modular_inversion_alt(cplx J, const EvalOptions&) {
    if (std::abs(J) < 1e-14) return reduced(rho);
    cplx w = std::sqrt(1.0 - J);
    cplx t = tau_from_pq(w);
    if (!(t.imag() > 0.0)) t = tau_from_pq(-w);
    return reduced(t);
}

cplx tau_from_g3_eta(const ModularParameter& tau, const EvalOptions& opts) {
    InvariantPair g = invariants(tau, opts);
    cplx eta12 = std::pow(dedekind_eta(tau, opts), 12);
    return tau_from_pq(I * std::sqrt(27.0) * g.g3 / (std::pow(pi, 6) * eta12));
}

PeriodPair exact_degenerate_periods(const CubicCurve& c, const EvalOptions& opts) {
    if (c.a == 0.0 && c.b == 0.0) throw Error(ErrorCode::Degenerate, "a = b = 0");
    if (c.b == 0.0) {
        // square lattice: omega = pi theta4^2(2i) / (8a)^{1/4}
        cplx v4 = theta_eval(4, 0.0, ModularParameter(0.0, 2.0), opts);
        cplx w = pi * v4 * v4 / std::pow(8.0 * c.a, 0.25);
        return {w, I * w};
    }
    if (c.a == 0.0) {
        // hexagonal lattice: omega = pi eta^2(rho) / (-27 b^2)^{1/12}, rho = e^{2 pi i/3}
        cplx r = cplx(-0.5, std::sqrt(3.0) / 2.0);
        ModularParameter rp(r);
        cplx e = dedekind_eta(rp, opts);
        cplx w = pi * e * e / std::pow(-27.0 * c.b * c.b, 1.0 / 12.0);
        cplx g3 = invariants(rp, opts).g3;
        // the 12th root fixes omega^6 up to sign, which flips b
        if (std::abs(g3 / std::pow(w, 6) - c.b) > std::abs(g3 / std::pow(w, 6) + c.b)) w *= std::exp(I * pi / 6.0);
        return {w, r * w};
    }
    throw Error(ErrorCode::BadIndex, "exact periods need a = 0 or b = 0");
}

PeriodPair periods_from_cubic(const CubicCurve& c, const EvalOptions& opts) {
    if (c.a == 0.0 || c.b == 0.0) return exact_degenerate_periods(c, opts);
    ModularParameter tau = modular_inversion(c, opts);
    InvariantPair g = invariants(tau, opts);
    cplx w = std::sqrt(c.a * g.g3 / (c.b * g.g2));
    PeriodPair p{w, tau.tau * w};
    if (std::abs(g.g2 / std::pow(w, 4) - c.a) > 1e-7 * std::abs(c.a) ||
        std::abs(g.g3 / std::pow(w, 6) - c.b) > 1e-7 * std::abs(c.b))
        throw Error(ErrorCode::RouteMismatch, "rescaled invariants do not reproduce (a, b)");
    return p;
}

QuarticInvariants invariants_from_quartic(const QuarticCurve& q) {
    const auto& a = q.a;
    cplx g2 = a[0] * a[4] - 4.0 * a[1] * a[3] + 3.0 * a[2] * a[2];
    cplx g3 = a[0] * (a[2] * a[4] - a[3] * a[3]) - a[1] * (a[1] * a[4] - a[3] * a[2]) + a[2] * (a[1] * a[3] - a[2] * a[2]);
    return {{g2, g3}, klein_j_from({g2, g3})};
}

cplx klein_j_from_k2(cplx k2) {
    cplx den = k2 * k2 * (k2 - 1.0) * (k2 - 1.0);
    if (std::abs(den) < 1e-300) throw Error(ErrorCode::DegenerateModulus, "k^2 in {0, 1}");
    return 4.0 / 27.0 * std::pow(k2 * k2 - k2 + 1.0, 3) / den;
}

cplx klein_j_from_kappa2(cplx x) {
    cplx den = x * std::pow(x - 1.0, 4);
    if (std::abs(den) < 1e-300) throw Error(ErrorCode::DegenerateModulus, "kappa^2 in {0, 1}");
    return std::pow(x * x + 14.0 * x + 1.0, 3) / (108.0 * den);
}

std::array<cplx, 2> quartic_cubic_transform(cplx alpha, cplx beta, cplx, cplx x, cplx y) {
    return {(x * x - y - alpha) / 2.0, x * x * x - y * x - 3.0 * alpha * x + beta};
}

std::array<cplx, 2> cubic_quartic_transform(cplx alpha, cplx beta, cplx, cplx z, cplx w) {
    cplx d = z - alpha;
    if (std::abs(d) < 1e-12 * std::max(1.0, std::abs(z) + std::abs(alpha)))
        throw Error(ErrorCode::PoleOfMap, "z = alpha");
    cplx x = (w - beta) / (2.0 * d);
    return {x, x * x - 2.0 * z - alpha};
}

cplx wp_preimage(cplx alpha, cplx beta, const PeriodPair& p, cplx g2, const EvalOptions& opts) {
    auto W = [&](cplx u) { return weierstrass_eval_lattice(u, p.omega, p.omega_prime, opts); };
    double scale = std::abs(alpha) + std::sqrt(std::abs(g2)) + 1e-300;
    // a root of wp - alpha with wp' ~ 0 is a half-period
    if (std::abs(beta) < 1e-10 * std::pow(scale, 1.5)) {
        std::array<cplx, 3> hs{p.omega, p.omega_prime, p.omega + p.omega_prime};
        cplx best = hs[0];
        for (cplx h : hs)
            if (std::abs(W(h).wp - alpha) < std::abs(W(best).wp - alpha)) best = h;
        return best;
    }
    // coarse grid over the period cell, then Newton
    const int N = 12;
    std::vector<std::pair<double, cplx>> cand;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            cplx u = 2.0 * ((i + 0.5) / N) * p.omega + 2.0 * ((j + 0.5) / N) * p.omega_prime;
            cand.push_back({std::abs(W(u).wp - alpha), u});
        }
    std::sort(cand.begin(), cand.end(), [](auto& x, auto& y) { return x.first < y.first; });
    for (std::size_t c = 0; c < std::min<std::size_t>(cand.size(), 8); ++c) {
        cplx v = cand[c].second;
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            WeierstrassQuadruple q = W(v);
            cplx dv = (q.wp - alpha) / q.wp_prime;
            v -= dv;
            if (std::abs(dv) < 1e-15 * (std::abs(v) + std::abs(p.omega))) {
                ok = true;
                break;
            }
        }
        if (!ok) continue;
        WeierstrassQuadruple q = W(v);
        if (std::abs(q.wp - alpha) > 1e-10 * scale) continue;
        return (std::abs(q.wp_prime - beta) <= std::abs(q.wp_prime + beta)) ? v : -v;
    }
    throw Error(ErrorCode::SeriesNotConverged, "no preimage of alpha under wp");
}

std::array<cplx, 4> quartic_roots(cplx alpha, cplx beta, cplx gamma, const EvalOptions& opts) {
    cplx g2 = 3.0 * alpha * alpha + gamma, g3 = alpha * alpha * alpha - gamma * alpha - beta * beta;
    cplx d = g2 * g2 * g2 - 27.0 * g3 * g3;
    if (std::abs(d) <= 1e-13 * (std::abs(g2 * g2 * g2) + 27.0 * std::abs(g3 * g3)))
        throw Error(ErrorCode::Degenerate, "associated cubic has a repeated root");
    PeriodPair p = periods_from_cubic({g2, g3}, opts);
    cplx v = wp_preimage(alpha, beta, p, g2, opts);
    auto Z = [&](cplx u) { return weierstrass_eval_lattice(u, p.omega, p.omega_prime, opts).zeta; };
    std::array<cplx, 4> wk{0.0, p.omega, p.omega_prime, p.omega + p.omega_prime};
    std::array<cplx, 4> x;
    for (int k = 0; k < 4; ++k) x[k] = 2.0 * Z(v / 2.0 + wk[k]) - Z(v + 2.0 * wk[k]);
    return x;
}

cplx agm(cplx a, cplx b) {
    for (int it = 0; it < 200; ++it) {
        cplx an = (a + b) / 2.0, bn = std::sqrt(a * b);
        if (std::abs(an - bn) > std::abs(an + bn)) bn = -bn;  // the "right" choice
        a = an;
        b = bn;
        if (std::abs(a - b) <= 1e-15 * std::abs(a)) return (a + b) / 2.0;
    }
    throw Error(ErrorCode::SeriesNotConverged, "AGM did not converge");
}

cplx elliptic_K(cplx m) {
    if (std::abs(1.0 - m) < 1e-300) throw Error(ErrorCode::DegenerateModulus, "K(1) diverges");
    return pi / (2.0 * agm(1.0, std::sqrt(1.0 - m)));
}

cplx elliptic_E(cplx m) {
    // E = K (1 - sum 2^{n-1} c_n^2), c_0^2 = m, c_{n+1} = (a_n - b_n)/2
    cplx a = 1.0, b = std::sqrt(1.0 - m);
    cplx sum = m / 2.0;
    double pw = 0.5;
    for (int it = 0; it < 200; ++it) {
        cplx an = (a + b) / 2.0, bn = std::sqrt(a * b);
        if (std::abs(an - bn) > std::abs(an + bn)) bn = -bn;
        cplx c = (a - b) / 2.0;
        pw *= 2.0;
        sum += pw * c * c;
        a = an;
        b = bn;
        if (std::abs(c) <= 1e-16 * std::abs(a)) break;
    }
    return pi / (2.0 * a) * (1.0 - sum);
}

ModularParameter jacobi_tau_from_k(cplx k2, const EvalOptions& opts) {
    if (std::abs(k2) < 1e-15 || std::abs(1.0 - k2) < 1e-15)
        throw Error(ErrorCode::DegenerateModulus, "k^2 in {0, 1}");
    cplx t = I * elliptic_K(1.0 - k2) / elliptic_K(k2);
    if (!(t.imag() > 0.0)) throw Error(ErrorCode::BranchAmbiguity, "i K'/K outside the upper half-plane");
    ModularParameter tau(t);
    NullwerteQuadruple v = nullwerte(tau, opts);
    if (std::abs(std::pow(v.v2 / v.v3, 4) - k2) > 1e-9 * std::max(1.0, std::abs(k2)))
        throw Error(ErrorCode::BranchAmbiguity, "i K'/K does not reproduce k^2");
    return tau;
}

}  // namespace tf
