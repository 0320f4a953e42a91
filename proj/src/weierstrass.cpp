#include "thetaforge/weierstrass.hpp"

#include <cmath>

#include "thetaforge/constants.hpp"
#include "thetaforge/inversion.hpp"
#include "thetaforge/theta_core.hpp"

namespace tf {

namespace {

// u = 2x + 2y tau with real x, y
std::pair<double, double> lattice_coords(cplx u, cplx tau) {
    double y = u.imag() / (2.0 * tau.imag());
    double x = (u.real() - 2.0 * y * tau.real()) / 2.0;
    return {x, y};
}

}  // namespace

double lattice_distance(cplx u, cplx tau) {
    auto [x, y] = lattice_coords(u, tau);
    double best = HUGE_VAL;
    for (int dm = -1; dm <= 1; ++dm)
        for (int dn = -1; dn <= 1; ++dn) {
            double m = std::round(x) + dm, n = std::round(y) + dn;
            best = std::min(best, std::abs(u - 2.0 * m - 2.0 * n * tau));
        }
    return best;
}

WeierstrassQuadruple weierstrass_eval(cplx u, const ModularParameter& tau, const EvalOptions& opts) {
    if (lattice_distance(u, tau.tau) < 1e-12) throw Error(ErrorCode::LatticePoint, "argument is a lattice point");
    // bring u into the period parallelogram around 0, then restore quasi-periodicity
    auto [x, y] = lattice_coords(u, tau.tau);
    double m = std::round(x), n = std::round(y);
    cplx ur = u - 2.0 * m - 2.0 * n * tau.tau;

    // every formula below is written for the theta argument z = u/2
    cplx z = ur / 2.0;
    NullwerteQuadruple v = nullwerte(tau, opts);
    cplx eta = weierstrass_eta(tau, opts);
    cplx t1 = theta_eval(1, z, tau, opts), t1p = theta_dz(1, 1, z, tau, opts);
    cplx t2 = theta_eval(2, z, tau, opts), t3 = theta_eval(3, z, tau, opts), t4 = theta_eval(4, z, tau, opts);
    cplx v3s = v.v3 * v.v3, v4s = v.v4 * v.v4;

    WeierstrassQuadruple q;
    q.sigma = t1 * std::exp(eta * ur * ur / 2.0) / (v.v1prime / 2.0);
    q.zeta = eta * ur + t1p / (2.0 * t1);
    q.wp = pi * pi / 12.0 * (v3s * v3s + v4s * v4s + 3.0 * v3s * v4s * (t2 * t2) / (t1 * t1));
    cplx v234 = v.v2 * v.v3 * v.v4;
    q.wp_prime = -std::pow(pi, 3) / 4.0 * v234 * v234 * t2 * t3 * t4 / (t1 * t1 * t1);

    if (m != 0.0 || n != 0.0) {
        cplx etap = eta * tau.tau - I * pi / 2.0;  // zeta(tau), Legendre relation
        cplx shift = 2.0 * m * eta + 2.0 * n * etap;
        double sg = (std::fmod(std::abs(m + n + m * n), 2.0) == 1.0) ? -1.0 : 1.0;
        q.sigma *= sg * std::exp(shift * (ur + m + n * tau.tau));
        q.zeta += shift;
    }
    return q;
}

cplx wp_eval(cplx u, const ModularParameter& tau, const EvalOptions& opts) {
    return weierstrass_eval(u, tau, opts).wp;
}

cplx zeta_eval(cplx u, const ModularParameter& tau, const EvalOptions& opts) {
    return weierstrass_eval(u, tau, opts).zeta;
}

namespace {

// tau of the lattice and the sign s with omega' = s tau omega
std::pair<cplx, int> lattice_tau(cplx omega, cplx omega_prime) {
    if (omega == 0.0) throw Error(ErrorCode::Degenerate, "omega = 0");
    cplx t = omega_prime / omega;
    if (std::abs(t.imag()) < 1e-14 * std::max(1.0, std::abs(t)))
        throw Error(ErrorCode::Degenerate, "half-periods are collinear");
    return t.imag() > 0 ? std::pair{t, 1} : std::pair{-t, -1};
}

}  // namespace

WeierstrassQuadruple weierstrass_eval_lattice(cplx u, cplx omega, cplx omega_prime, const EvalOptions& opts) {
    auto [t, s] = lattice_tau(omega, omega_prime);
    WeierstrassQuadruple q = weierstrass_eval(u / omega, ModularParameter(t), opts);
    return {omega * q.sigma, q.zeta / omega, q.wp / (omega * omega), q.wp_prime / (omega * omega * omega)};
}

HalfPeriodData half_period_data(cplx omega, cplx omega_prime, const EvalOptions& opts) {
    auto [t, s] = lattice_tau(omega, omega_prime);
    cplx eta = weierstrass_eta(ModularParameter(t), opts);
    HalfPeriodData hp;
    hp.omega = omega;
    hp.omega_prime = omega_prime;
    hp.eta = eta / omega;
    hp.eta_prime = double(s) * (eta * t - I * pi / 2.0) / omega;
    hp.s = s;
    return hp;
}

std::array<cplx, 2> lattice_invariants(cplx omega, cplx omega_prime, const EvalOptions& opts) {
    auto [t, s] = lattice_tau(omega, omega_prime);
    InvariantPair g = invariants(ModularParameter(t), opts);
    return {g.g2 / std::pow(omega, 4), g.g3 / std::pow(omega, 6)};
}

namespace {

// theta_m(w)/theta_1(w), m in {2,3,4}, through wp at the related modulus
cplx basic_ratio(int m, cplx w, const ModularParameter& tau, int form, const EvalOptions& opts) {
    NullwerteQuadruple v = nullwerte(tau, opts);
    cplx vm = (m == 2) ? v.v2 : (m == 3) ? v.v3 : v.v4;
    // m = 2: doubled modulus, argument 2w; m = 3, 4: halved moduli, argument w
    ModularParameter T = (m == 2) ? ModularParameter(2.0 * tau.tau)
                         : (m == 3) ? ModularParameter((tau.tau + 1.0) / 2.0)
                                    : ModularParameter(tau.tau / 2.0);
    cplx arg = (m == 2) ? 2.0 * w : w;
    // the other half-period: T for m = 2, 1 for m = 3, 4
    cplx hp = (m == 2) ? T.tau : cplx(1.0);
    if (lattice_distance(arg, T.tau) < 1e-12 || lattice_distance(arg - hp, T.tau) < 1e-12)
        throw Error(ErrorCode::PoleOfRatio, "theta ratio has a pole or zero here");
    WeierstrassQuadruple q = weierstrass_eval(arg, T, opts);
    if (form == 0) {
        NullwerteQuadruple vT = nullwerte(T, opts);
        cplx e = (m == 2) ? e_gamma_delta(1, 0, vT) : e_gamma_delta(0, 1, vT);
        cplx den = q.wp - e;
        if (std::abs(den) < 1e-13 * (std::abs(q.wp) + std::abs(e)))
            throw Error(ErrorCode::PoleOfRatio, "wp - e vanishes");
        double c = (m == 2) ? 1.0 : 0.5;
        return -c * vm / v.v1prime * q.wp_prime / den;
    }
    cplx etaT = weierstrass_eta(T, opts);
    cplx eh = (m == 2) ? etaT * T.tau - I * pi / 2.0 : etaT;  // zeta(hp | T)
    cplx zd = q.zeta - weierstrass_eval(arg - hp, T, opts).zeta - eh;
    double c = (m == 2) ? 2.0 : 1.0;
    return c * vm / v.v1prime * zd;
}

}  // namespace

cplx theta_ratio_via_wp(int j, int k, cplx z, const ModularParameter& tau, int form, const EvalOptions& opts) {
    if (j < 1 || j > 4 || k < 1 || k > 4) throw Error(ErrorCode::BadIndex, "theta index must be 1..4");
    if (form != 0 && form != 1) throw Error(ErrorCode::BadIndex, "form must be 0 or 1");
    if (j == k) return 1.0;
    if (k == 1) return basic_ratio(j, z, tau, form, opts);
    // shift z by the half-period that carries theta_k to theta_1:
    // theta_j(z)/theta_k(z) = c theta_m(w)/theta_1(w)
    cplx w;
    int m = 0;
    cplx c = 1.0;
    if (k == 2) {
        w = z + 0.5;
        if (j == 1) m = 2, c = -1.0;
        if (j == 3) m = 4;
        if (j == 4) m = 3;
    } else if (k == 4) {
        w = z + tau.tau / 2.0;
        if (j == 1) m = 4;
        if (j == 2) m = 3, c = I;
        if (j == 3) m = 2, c = I;
    } else {
        w = z + (1.0 + tau.tau) / 2.0;
        if (j == 1) m = 3, c = -I;
        if (j == 2) m = 4;
        if (j == 4) m = 2, c = I;
    }
    return c * basic_ratio(m, w, tau, form, opts);
}

JacobiTriple jacobi_sn_cn_dn(cplx u, cplx k2, const EvalOptions& opts) {
    ModularParameter tau = jacobi_tau_from_k(k2, opts);
    NullwerteQuadruple v = nullwerte(tau, opts);
    cplx z = u / (pi * v.v3 * v.v3);
    cplx t1 = theta_eval(1, z, tau, opts), t2 = theta_eval(2, z, tau, opts);
    cplx t3 = theta_eval(3, z, tau, opts), t4 = theta_eval(4, z, tau, opts);
    return {v.v3 / v.v2 * t1 / t4, v.v4 / v.v2 * t2 / t4, v.v4 / v.v3 * t3 / t4};
}

HalfPeriodDerivatives halfperiod_derivatives(cplx z, const HalfPeriodData& hp, const EvalOptions& opts) {
    WeierstrassQuadruple q = weierstrass_eval_lattice(z, hp.omega, hp.omega_prime, opts);
    cplx g2 = lattice_invariants(hp.omega, hp.omega_prime, opts)[0];
    const cplx S = q.sigma, Z = q.zeta, P = q.wp, PP = q.wp_prime;
    const cplx w = hp.omega, w2 = hp.omega_prime, e = hp.eta, ep = hp.eta_prime;
    const cplx k = double(hp.s) * I / pi;
    HalfPeriodDerivatives d;
    d.d_omega = {-k * (w2 * (P - Z * Z - g2 * z * z / 12.0) + 2.0 * ep * (z * Z - 1.0)) * S,
                 -k * (2.0 * (w2 * Z - z * ep) * P + w2 * (PP - g2 * z / 6.0) + 2.0 * ep * Z),
                 k * (2.0 * (w2 * Z - z * ep) * PP + 4.0 * (w2 * P - ep) * P - 2.0 * w2 * g2 / 3.0),
                 k * (6.0 * (w2 * P - ep) * PP + (w2 * Z - z * ep) * (12.0 * P * P - g2))};
    d.d_omega_prime = {k * (w * (P - Z * Z - g2 * z * z / 12.0) + 2.0 * e * (z * Z - 1.0)) * S,
                       k * (2.0 * (w * Z - z * e) * P + w * (PP - g2 * z / 6.0) + 2.0 * e * Z),
                       -k * (2.0 * (w * Z - z * e) * PP + 4.0 * (w * P - e) * P - 2.0 * w * g2 / 3.0),
                       -k * (6.0 * (w * P - e) * PP + (w * Z - z * e) * (12.0 * P * P - g2))};
    return d;
}

std::array<cplx, 3> z_field_weier(const WeierstrassQuadruple& q, cplx g2) {
    return {-q.wp, q.wp_prime, 6.0 * q.wp * q.wp - g2 / 2.0};
}

std::array<cplx, 4> tau_field_weier(cplx u, const WeierstrassQuadruple& q, cplx eta, cplx g2) {
    // omega = 1, omega' = tau: the omega' column of the half-period rules
    const cplx S = q.sigma, Z = q.zeta, P = q.wp, PP = q.wp_prime;
    const cplx k = I / pi;
    return {k * ((P - Z * Z - g2 * u * u / 12.0) + 2.0 * eta * (u * Z - 1.0)) * S,
            k * (2.0 * (Z - u * eta) * P + (PP - g2 * u / 6.0) + 2.0 * eta * Z),
            -k * (2.0 * (Z - u * eta) * PP + 4.0 * (P - eta) * P - 2.0 * g2 / 3.0),
            -k * (6.0 * (P - eta) * PP + (Z - u * eta) * (12.0 * P * P - g2))};
}

}  // namespace tf
