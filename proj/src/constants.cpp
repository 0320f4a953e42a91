#include "thetaforge/constants.hpp"

#include <cmath>

#include "thetaforge/theta_core.hpp"

namespace tf {

NullwerteQuadruple nullwerte(const ModularParameter& tau, const EvalOptions& opts) {
    NullwerteQuadruple v;
    v.v2 = theta_eval(2, 0.0, tau, opts);
    v.v3 = theta_eval(3, 0.0, tau, opts);
    v.v4 = theta_eval(4, 0.0, tau, opts);
    v.v1prime = theta_dz(1, 1, 0.0, tau, opts);
    return v;
}

namespace {

long sigma1(long n) {
    long s = 0;
    for (long d = 1; d * d <= n; ++d)
        if (n % d == 0) s += (d * d == n) ? d : d + n / d;
    return s;
}

// sum_{n>=1} w(n) (2 pi i n)^j q^{2n}, stopping on decaying terms
template <class W>
cplx qseries(const ModularParameter& tp, int j, W w, const EvalOptions& opts) {
    cplx q2 = tp.nome * tp.nome;
    cplx pw = 1.0, sum = 0.0;
    double abs_sum = 0.0, prev = HUGE_VAL;
    for (long n = 1; n <= opts.max_terms; ++n) {
        pw *= q2;
        cplx t = double(w(n)) * pw * std::pow(2.0 * pi * I * double(n), j);
        sum += t;
        double m = std::abs(t);
        abs_sum += m;
        if (m <= prev && m <= opts.rel_tol * abs_sum) return sum;
        if (m == 0.0) return sum;
        prev = m;
    }
    throw Error(ErrorCode::SeriesNotConverged, "Lambert series hit max_terms");
}

}  // namespace

cplx weierstrass_eta_deriv(const ModularParameter& tau, int j, const EvalOptions& opts) {
    if (j < 0) throw Error(ErrorCode::BadIndex, "negative derivative order");
    cplx s = qseries(tau, j, sigma1, opts);
    cplx c = (j == 0) ? cplx(1.0 / 24.0) : cplx(0.0);
    return 2.0 * pi * pi * (c - s);
}

cplx weierstrass_eta(const ModularParameter& tau, const EvalOptions& opts) {
    return weierstrass_eta_deriv(tau, 0, opts);
}

cplx dedekind_eta_deriv(const ModularParameter& tp, int j, const EvalOptions& opts) {
    if (j < 0) throw Error(ErrorCode::BadIndex, "negative derivative order");
    const cplx tau = tp.tau;
    auto term = [&](long k) {
        double e = 1.0 / 12.0 + 3.0 * double(k * k) + double(k);
        cplx t = std::exp(I * pi * e * tau) * std::pow(I * pi * e, j);
        return (k % 2 != 0) ? -t : t;
    };
    cplx sum = term(0);
    double abs_sum = std::abs(sum);
    for (long k = 1; k <= opts.max_terms; ++k) {
        cplx a = term(k), b = term(-k);
        sum += a + b;
        double m = std::abs(a) + std::abs(b);
        abs_sum += m;
        if (m <= opts.rel_tol * abs_sum || m == 0.0) return sum;
    }
    throw Error(ErrorCode::SeriesNotConverged, "pentagonal series hit max_terms");
}

cplx dedekind_eta(const ModularParameter& tau, const EvalOptions& opts) { return dedekind_eta_deriv(tau, 0, opts); }

InvariantPair invariants_lambert(const ModularParameter& tau, const EvalOptions& opts) {
    // sum k^p q^{2k}/(1-q^{2k}) = sum_n sigma_p(n) q^{2n}; summed directly in Lambert form
    cplx q2 = tau.nome * tau.nome;
    auto lambert = [&](int p) {
        cplx pw = 1.0, sum = 0.0;
        double abs_sum = 0.0, prev = HUGE_VAL;
        for (long k = 1; k <= opts.max_terms; ++k) {
            pw *= q2;
            cplx t = std::pow(double(k), p) * pw / (1.0 - pw);
            sum += t;
            double m = std::abs(t);
            abs_sum += m;
            if ((m <= prev && m <= opts.rel_tol * abs_sum) || m == 0.0) return sum;
            prev = m;
        }
        throw Error(ErrorCode::SeriesNotConverged, "Lambert series hit max_terms");
    };
    const double p4 = std::pow(pi, 4), p6 = std::pow(pi, 6);
    return {20.0 * p4 * (1.0 / 240.0 + lambert(3)), (7.0 / 3.0) * p6 * (1.0 / 504.0 - lambert(5))};
}

InvariantPair invariants_theta(const NullwerteQuadruple& v) {
    cplx a = std::pow(v.v2, 4), b = std::pow(v.v3, 4), c = std::pow(v.v4, 4);
    const double p4 = std::pow(pi, 4), p6 = std::pow(pi, 6);
    return {p4 / 24.0 * (a * a + b * b + c * c), p6 / 432.0 * (a + b) * (b + c) * (c - a)};
}

cplx nullwert_ab(int alpha, int beta, const NullwerteQuadruple& v) {
    int a = ((alpha % 2) + 2) % 2, b = ((beta % 2) + 2) % 2;
    if (a == 1 && b == 1) return 0.0;
    if (a == 1) return v.v2;
    if (b == 0) return v.v3;
    return v.v4;
}

InvariantPair invariants_ab(int alpha, int beta, const NullwerteQuadruple& v) {
    if (ang(alpha) == 1 && ang(beta) == 1)
        throw Error(ErrorCode::BadIndex, "(alpha,beta)-representation requires (alpha,beta) != (0,0)");
    cplx X = std::pow(nullwert_ab(alpha, 0, v), 4), Y = std::pow(nullwert_ab(0, beta, v), 4);
    double sa = ang(alpha), sb = ang(beta), sab = ang(alpha + beta);
    const double p4 = std::pow(pi, 4), p6 = std::pow(pi, 6);
    cplx g2 = p4 / 12.0 * (X * X + sab * X * Y + Y * Y);
    cplx g3 = p6 / 432.0 * (2.0 * sb * X * X * X - 3.0 * X * Y * (sb * Y - sa * X) - 2.0 * sa * Y * Y * Y);
    return {g2, g3};
}

InvariantPair invariants(const ModularParameter& tau, const EvalOptions& opts) {
    InvariantPair L = invariants_lambert(tau, opts);
    NullwerteQuadruple v = nullwerte(tau, opts);
    InvariantPair T = invariants_theta(v);
    // g2 can vanish (tau = rho), so compare against the size of the summands
    double a = std::pow(std::abs(v.v2), 4), b = std::pow(std::abs(v.v3), 4), c = std::pow(std::abs(v.v4), 4);
    double s2 = std::pow(pi, 4) / 24.0 * (a * a + b * b + c * c);
    double s3 = std::pow(pi, 6) / 432.0 * (a + b) * (b + c) * (c + a);
    if (std::abs(L.g2 - T.g2) > 1e-11 * s2 || std::abs(L.g3 - T.g3) > 1e-11 * s3)
        throw Error(ErrorCode::RouteMismatch, "Lambert and theta-constant invariants disagree");
    return L;
}

cplx e_gamma_delta(int gamma, int delta, const NullwerteQuadruple& v) {
    return pi * pi / 12.0 *
           (double(ang(gamma)) * std::pow(nullwert_ab(0, delta, v), 4) -
            double(ang(delta)) * std::pow(nullwert_ab(gamma, 0, v), 4));
}

BranchPoints branch_points(const ModularParameter& tau, const EvalOptions& opts) {
    NullwerteQuadruple v = nullwerte(tau, opts);
    BranchPoints bp;
    for (int g = 0; g < 2; ++g)
        for (int d = 0; d < 2; ++d) bp.e_gamma_delta[{g, d}] = (g == 0 && d == 0) ? cplx(0.0) : e_gamma_delta(g, d, v);
    bp.e1 = bp.e_gamma_delta[{0, 1}];
    bp.e2 = bp.e_gamma_delta[{1, 1}];
    bp.e3 = bp.e_gamma_delta[{1, 0}];
    return bp;
}

cplx klein_j_from(const InvariantPair& g) {
    cplx g23 = g.g2 * g.g2 * g.g2;
    cplx den = g23 - 27.0 * g.g3 * g.g3;
    if (std::abs(den) < 1e-14 * std::abs(g23))
        throw Error(ErrorCode::DegenerateDiscriminant, "g2^3 - 27 g3^2 vanishes");
    return g23 / den;
}

cplx klein_j(const ModularParameter& tau, const EvalOptions& opts) {
    InvariantPair g = invariants(tau, opts);
    // g2^3 - 27 g3^2 = pi^12 (theta2 theta3 theta4)^8 / 256: same quantity, no cancellation
    NullwerteQuadruple v = nullwerte(tau, opts);
    cplx disc = std::pow(pi, 12) * std::pow(v.v2 * v.v3 * v.v4, 8) / 256.0;
    cplx g23 = g.g2 * g.g2 * g.g2;
    if (std::abs(disc) < 1e-14 * std::abs(g23))
        throw Error(ErrorCode::DegenerateDiscriminant, "g2^3 - 27 g3^2 vanishes");
    return g23 / disc;
}

}  // namespace tf
