#include "thetaforge/painleve.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "thetaforge/constants.hpp"
#include "thetaforge/inversion.hpp"
#include "thetaforge/numeric.hpp"
#include "thetaforge/theta_core.hpp"
#include "thetaforge/weierstrass.hpp"

namespace tf {

namespace {

cplx p4(cplx x) { return x * x * x * x; }

// eta' from the Legendre relation eta' = eta tau - i pi/2
cplx eta_prime(cplx eta, cplx tau) { return eta * tau - I * pi / 2.0; }

// theta-form constants live on u = A K/K' + B; everything else follows from (tau, u)
struct ThetaPoint {
    cplx t1, t2, t3, t4, t1p, v2;
};
ThetaPoint theta_point(cplx A, cplx B, cplx x, const EvalOptions& opts) {
    const cplx K = elliptic_K(x), Kp = elliptic_K(1.0 - x);
    const ModularParameter tau(I * K / Kp);
    const cplx u = A * K / Kp + B;
    return {theta_eval(1, u, tau, opts), theta_eval(2, u, tau, opts), theta_eval(3, u, tau, opts),
            theta_eval(4, u, tau, opts), theta1_prime_eval(u, tau, opts), theta_eval(2, 0.0, tau, opts)};
}

}  // namespace

XY change_of_variables(cplx z, const ModularParameter& tau, const EvalOptions& opts) {
    const auto v = nullwerte(tau, opts);
    const cplx x = p4(v.v4) / p4(v.v3);
    return {x, 1.0 / 3.0 + x / 3.0 - 4.0 / (pi * pi) * wp_eval(z, tau, opts) / p4(v.v3)};
}

cplx tau_of_x(cplx x) {
    if (std::abs(x) < 1e-300 || std::abs(1.0 - x) < 1e-300)
        throw Error(ErrorCode::DegenerateModulus, "x at a fixed singular point");
    return I * elliptic_K(x) / elliptic_K(1.0 - x);
}

cplx hitchin_wp(const HitchinConstants& c, const ModularParameter& tau, const EvalOptions& opts) {
    const cplx v = c.Aconst * tau.tau + c.Bconst;
    const auto q = weierstrass_eval(v, tau, opts);
    const cplx den = q.zeta - v * weierstrass_eta(tau, opts) + I * pi / 2.0 * c.Aconst;
    if (std::abs(den) < 1e-14 * (std::abs(q.zeta) + 1.0))
        throw Error(ErrorCode::DenominatorVanishes, "zeta(v) - v eta + i pi A/2 vanishes");
    return q.wp + 0.5 * q.wp_prime / den;
}

XY hitchin_solution(const HitchinConstants& c, const ModularParameter& tau, const EvalOptions& opts) {
    const auto v = nullwerte(tau, opts);
    const cplx x = p4(v.v4) / p4(v.v3);
    return {x, 1.0 / 3.0 + x / 3.0 - 4.0 / (pi * pi) * hitchin_wp(c, tau, opts) / p4(v.v3)};
}

cplx hitchin_theta_form(cplx A, cplx B, cplx x, const EvalOptions& opts) {
    const auto t = theta_point(A, B, x, opts);
    return std::sqrt(x) / (t.t1 * t.t1) *
           (pi * t.v2 * t.v2 * t.t2 * t.t3 * t.t4 / (t.t1p + 2.0 * pi * A * t.t1) - t.t2 * t.t2);
}

HitchinConstants theta_to_weierstrass_constants(cplx A, cplx B) { return {-2.0 * I * A, 2.0 * B}; }

cplx hitchin_tau_function_form(cplx A, cplx B, cplx x, const EvalOptions& opts) {
    auto f = [&](cplx s) {
        const auto t = theta_point(A, B, s, opts);
        const cplx Kp = elliptic_K(1.0 - s);
        const cplx n = t.t1p + 2.0 * pi * A * t.t1;
        return n * n / ((1.0 - s) * t.t1 * t.t1 * Kp * Kp);
    };
    return x * (1.0 - x) * fd1r(f, x, 1e-3) / f(x);
}

cplx hitchin_tau_function_form_alt(cplx A, cplx B, cplx x, const EvalOptions& opts) {
    auto g = [&](cplx s) {
        const auto t = theta_point(A, B, s, opts);
        return t.t1p / t.t1 + 2.0 * pi * A;
    };
    const auto L = legendre_KE(x);
    return L.Ep / L.Kp + 2.0 * x * (1.0 - x) * fd1r(g, x, 1e-3) / g(x);
}

HitchinState hitchin_general_integral(const HitchinConstants& c, const ModularParameter& tau,
                                      const EvalOptions& opts) {
    const cplx v = c.Aconst * tau.tau + c.Bconst;
    const auto q = weierstrass_eval(v, tau, opts);
    const cplx eta = weierstrass_eta(tau, opts);
    return {q.zeta - c.Aconst * eta_prime(eta, tau.tau) - c.Bconst * eta, q.wp, q.wp_prime};
}

HitchinConstants recover_hitchin_constants(const HitchinState& s, const ModularParameter& tau,
                                           const EvalOptions& opts) {
    const auto g = invariants_lambert(tau, opts);
    const cplx v = wp_preimage(s.wp, s.wpp, {1.0, tau.tau}, g.g2, opts);
    const cplx eta = weierstrass_eta(tau, opts), etap = eta_prime(eta, tau.tau);
    const cplx rhs = zeta_eval(v, tau, opts) - s.zeta;
    // A tau + B = v, A eta' + B eta = rhs; determinant tau eta - eta' = i pi/2
    const cplx det = tau.tau * eta - etap;
    return {(v * eta - rhs) / det, (tau.tau * rhs - etap * v) / det};
}

HitchinDerivative hitchin_field(cplx zeta_v, cplx wp_v, const ModularParameter& tau, cplx branch_hint,
                                const EvalOptions& opts) {
    const auto g = invariants_lambert(tau, opts);
    const cplx eta = weierstrass_eta(tau, opts);
    const cplx cubic = 4.0 * wp_v * wp_v * wp_v - g.g2 * wp_v - g.g3;
    const cplx r = std::sqrt(cubic);
    // decide on the cubic itself: its square root amplifies rounding near a branch point
    const double scale = 4.0 * std::pow(std::abs(wp_v), 3) + std::abs(g.g2 * wp_v) + std::abs(g.g3) + 1e-300;
    cplx w = 0.0;
    if (std::abs(cubic) > 1e-12 * scale) {
        const double proj = (std::conj(branch_hint) * r).real();
        if (std::abs(proj) <= 1e-12 * std::abs(branch_hint) * std::abs(r) || branch_hint == 0.0)
            throw Error(ErrorCode::BranchAmbiguity, "branch hint does not select a square root");
        w = proj > 0 ? r : -r;
    }
    HitchinDerivative d;
    d.wpp_used = w;
    d.dzeta = I / pi * (w + 2.0 * (wp_v + eta) * zeta_v);
    d.dwp = -I / pi * (2.0 * zeta_v * w + 4.0 * (wp_v - eta) * wp_v - 2.0 / 3.0 * g.g2);
    d.dwpp = -I / pi * (6.0 * (wp_v - eta) * w + (12.0 * wp_v * wp_v - g.g2) * zeta_v);
    return d;
}

LegendreIntegrals legendre_KE(cplx x) {
    if (std::abs(x) < 1e-300 || std::abs(1.0 - x) < 1e-300)
        throw Error(ErrorCode::DegenerateModulus, "x = 0 or x = 1");
    return {elliptic_K(x), elliptic_K(1.0 - x), elliptic_E(x), elliptic_E(1.0 - x)};
}

std::array<cplx, 4> legendre_KE_rules(cplx x, const LegendreIntegrals& L) {
    return {(L.E / (x * (1.0 - x)) - L.K / x) / 2.0, (L.Ep / (x * (x - 1.0)) - L.Kp / (x - 1.0)) / 2.0,
            (L.E / x - L.K / x) / 2.0, (L.Ep / (x - 1.0) - L.Kp / (x - 1.0)) / 2.0};
}

cplx pvi_rhs(const PVIParameters& p, cplx x, cplx y, cplx y1) {
    return 0.5 * (1.0 / y + 1.0 / (y - 1.0) + 1.0 / (y - x)) * y1 * y1 -
           (1.0 / x + 1.0 / (x - 1.0) + 1.0 / (y - x)) * y1 +
           y * (y - 1.0) * (y - x) / (x * x * (x - 1.0) * (x - 1.0)) *
               (p.alpha - p.beta * x / (y * y) + p.gamma * (x - 1.0) / ((y - 1.0) * (y - 1.0)) -
                (p.delta - 0.5) * x * (x - 1.0) / ((y - x) * (y - x)));
}

PVIResidual pvi_equation_residual(const PVIParameters& p, cplx x, cplx y, cplx y1, cplx y2) {
    const cplx r = pvi_rhs(p, x, y, y1);
    return {y2 - r, std::max({std::abs(y2), std::abs(r), 1e-300})};
}

namespace {

PVISample pvi_sample(const HitchinConstants& c, double x, const EvalOptions& opts) {
    auto y = [&](cplx s) { return hitchin_solution(c, ModularParameter(tau_of_x(s)), opts).y; };
    const double h = 1e-4;
    const cplx y0 = y(x);
    const cplx y1 = fd1r(y, cplx(x), h);
    const cplx y2 = (16.0 * fd2(y, cplx(x), h) - fd2(y, cplx(x), 2.0 * h)) / 15.0;
    PVISample s;
    s.x = x;
    s.y = y0;
    s.residual = pvi_equation_residual(PVIParameters{}, x, y0, y1, y2).rel();
    // the tau-function form lives on the theta-form constants (i A/2, B/2)
    const cplx At = I * c.Aconst / 2.0, Bt = c.Bconst / 2.0;
    s.tau_form_diff = std::abs(hitchin_tau_function_form_alt(At, Bt, x, opts) - y0);
    return s;
}

}  // namespace

std::vector<PVISample> pvi_residual(const HitchinConstants& c, const std::vector<double>& xs,
                                    const EvalOptions& opts) {
    return sample_map<double, PVISample>(xs, [&](const double& x) { return pvi_sample(c, x, opts); });
}

std::vector<PVISample> pvi_residual_serial(const HitchinConstants& c, const std::vector<double>& xs,
                                           const EvalOptions& opts) {
    return sample_map_serial<double, PVISample>(xs, [&](const double& x) { return pvi_sample(c, x, opts); });
}

std::string pvi_csv(const std::vector<PVISample>& s) {
    std::string out = "x,re_y,im_y,residual\n";
    char buf[160];
    for (const auto& r : s) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.3e\n", r.x, r.y.real(), r.y.imag(), r.residual);
        out += buf;
    }
    return out;
}

std::array<cplx, 2> hitchin_indefinite_integral(const HitchinConstants& c, const ModularParameter& tau,
                                                const EvalOptions& opts) {
    const cplx A = c.Aconst;
    const cplx u = (A * tau.tau + c.Bconst) / 2.0;
    const cplx t1 = theta_eval(1, u, tau, opts);
    // total derivative: (A/2) theta1' + d_tau theta1
    const cplx dt1 = A / 2.0 * theta_dz(1, 1, u, tau, opts) + theta_deriv(1, 0, 1, u, tau, opts);
    const cplx lhs = dt1 / t1 - dedekind_eta_deriv(tau, 1, opts) / dedekind_eta(tau, opts) + I * pi * A * A / 4.0;
    const auto s = hitchin_general_integral(c, tau, opts);
    return {lhs, I / pi * (s.wp - s.zeta * s.zeta)};
}

cplx sigma_log_tau_derivative(cplx z, const ModularParameter& tau, const EvalOptions& opts) {
    const auto q = weierstrass_eval(z, tau, opts);
    const cplx eta = weierstrass_eta(tau, opts);
    const cplx g2 = invariants_lambert(tau, opts).g2;
    const cplx Z = q.zeta - z * eta;
    // -pi i d/dtau ln sigma = wp - Z^2 + (eta^2 - g2/12) z^2 - 2 eta
    return (q.wp - Z * Z + (eta * eta - g2 / 12.0) * z * z - 2.0 * eta) / (-pi * I);
}

EllipticFormCheck elliptic_form_check(const HitchinConstants& c, const ModularParameter& tau, double h,
                                      const EvalOptions& opts) {
    const auto g = invariants_lambert(tau, opts);
    const cplx w0 = hitchin_wp(c, tau, opts);
    cplx z0 = wp_preimage(w0, std::sqrt(4.0 * w0 * w0 * w0 - g.g2 * w0 - g.g3), {1.0, tau.tau}, g.g2, opts);
    // follow the preimage by Newton from the neighbouring point
    auto track = [&](cplx t, cplx start) {
        const ModularParameter tt(t);
        const cplx w = hitchin_wp(c, tt, opts);
        cplx z = start;
        for (int it = 0; it < 60; ++it) {
            const auto q = weierstrass_eval(z, tt, opts);
            const cplx dz = (q.wp - w) / q.wp_prime;
            z -= dz;
            if (std::abs(dz) < 1e-15 * (1.0 + std::abs(z))) break;
        }
        return z;
    };
    std::array<cplx, 5> zs;
    zs[2] = z0;
    zs[3] = track(tau.tau + h, z0);
    zs[4] = track(tau.tau + 2.0 * h, zs[3]);
    zs[1] = track(tau.tau - h, z0);
    zs[0] = track(tau.tau - 2.0 * h, zs[1]);
    EllipticFormCheck r;
    r.z = z0;
    r.zdd = (-zs[4] + 16.0 * zs[3] - 30.0 * zs[2] + 16.0 * zs[1] - zs[0]) / (12.0 * h * h);
    r.wp_form = -4.0 * weierstrass_eval(2.0 * z0, tau, opts).wp_prime / (pi * pi);
    const cplx de = dedekind_eta(tau, opts);
    r.theta_form = 4.0 * pi * std::pow(de, 9) * theta_eval(1, 2.0 * z0, tau, opts) /
                   std::pow(theta_eval(1, z0, tau, opts), 4);
    return r;
}

}  // namespace tf
