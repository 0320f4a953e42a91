#include "thetaforge/theta_ode.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "thetaforge/constants.hpp"
#include "thetaforge/inversion.hpp"
#include "thetaforge/numeric.hpp"
#include "thetaforge/theta_core.hpp"

namespace tf {

namespace {

constexpr int NJ = 8;
using J = Jet<NJ>;

cplx sq(cplx x) { return x * x; }
cplx p4(cplx x) { return sq(sq(x)); }

void require_theta1(const ThetaState& s) {
    double m = 0.0;
    for (int i = 0; i < 5; ++i) m = std::max(m, std::abs(s[i]));
    if (std::abs(s.t1) < 1e-13 * m || s.t1 == 0.0)
        throw Error(ErrorCode::ThetaOneVanishes, "theta1 is (numerically) zero in the field denominators");
}

// floor division for the sign factor of shifted characteristics
long fdiv(long a, long b) { return (a >= 0) ? a / b : -((-a + b - 1) / b); }

long parity_sign(long alpha, long beta) { return (((fdiv(beta, 2) * alpha) % 2) == 0) ? 1 : -1; }

ScalarResidual residual(std::initializer_list<cplx> terms) {
    ScalarResidual r{0.0, 0.0};
    for (cplx t : terms) {
        r.value += t;
        r.scale = std::max(r.scale, std::abs(t));
    }
    if (r.scale == 0.0) r.scale = 1.0;
    return r;
}

// tau-jet of a nullwert: d^n/dtau^n through the heat equation
J nullwert_jet(int k, const ModularParameter& tau, const EvalOptions& opts) {
    std::array<cplx, NJ> d;
    for (int n = 0; n < NJ; ++n) d[n] = theta_deriv(k, 0, n, 0.0, tau, opts);
    return J::from_derivs(d);
}

J eta_jet(const ModularParameter& tau, const EvalOptions& opts) {
    std::array<cplx, NJ> d;
    d[0] = weierstrass_eta(tau, opts);
    for (int n = 1; n < NJ; ++n) d[n] = weierstrass_eta_deriv(tau, n, opts);
    return J::from_derivs(d);
}

// z-jet of theta_k around z
J theta_z_jet(int k, cplx z, const ModularParameter& tau, const EvalOptions& opts) {
    std::array<cplx, NJ> d;
    for (int n = 0; n < NJ; ++n) d[n] = theta_dz(k, n, z, tau, opts);
    return J::from_derivs(d);
}

// C^4 ((log C^3 C'')')^2 = 16 C^3 C'' - pi^2
ScalarResidual jacobi_c_residual(const J& C) {
    J C2 = C.diff().diff();
    J L = jlog(C * C * C * C2).diff();
    cplx c0 = C.c[0];
    return residual({p4(c0) * sq(L.c[0]), -16.0 * c0 * c0 * c0 * C2.c[0], pi * pi});
}

ScalarResidual log_derivative_residual(const J& X) {
    cplx x0 = X.deriv(0), x1 = X.deriv(1), x2 = X.deriv(2), x3 = X.deriv(3);
    return residual({(x1 - 2.0 * x0 * x0) * x3, -x2 * x2, 16.0 * x0 * x0 * x0 * x2,
                     4.0 * (x1 - 6.0 * x0 * x0) * x1 * x1});
}

ScalarResidual chazy_residual(const J& e) {
    cplx e0 = e.deriv(0), e1 = e.deriv(1), e2 = e.deriv(2), e3 = e.deriv(3);
    return residual({pi * e3, -24.0 * I * e0 * e2, 36.0 * I * e1 * e1});
}

}  // namespace

std::pair<int, int> index_triple(int k) {
    switch (k) {
        case 2: return {3, 4};
        case 3: return {4, 2};
        case 4: return {2, 3};
        default: throw Error(ErrorCode::BadIndex, "index triple needs k in {2,3,4}");
    }
}

ThetaState canonical_state(cplx z, const ModularParameter& tau, const EvalOptions& opts) {
    return {theta_eval(1, z, tau, opts), theta_eval(2, z, tau, opts), theta_eval(3, z, tau, opts),
            theta_eval(4, z, tau, opts), theta1_prime_eval(z, tau, opts)};
}

CoefficientState canonical_coefficients(const ModularParameter& tau, const EvalOptions& opts) {
    auto v = nullwerte(tau, opts);
    return {v.v2, v.v3, v.v4, weierstrass_eta(tau, opts)};
}

cplx quarter_lambda(const CoefficientState& c) { return c.eta + pi * pi / 12.0 * (p4(c.v3) + p4(c.v4)); }

ThetaState z_field(const ThetaState& s, const CoefficientState& c) {
    require_theta1(s);
    ThetaState d;
    d.t1 = s.t1p;
    const cplx r = s.t1p / s.t1;
    for (int k = 2; k <= 4; ++k) {
        auto [n, m] = index_triple(k);
        d[k - 1] = r * s.theta(k) - pi * sq(c.nullwert(k)) * s.theta(n) * s.theta(m) / s.t1;
    }
    d.t1p = s.t1p * s.t1p / s.t1 - pi * pi * sq(c.v3) * sq(c.v4) * sq(s.t2) / s.t1 - 4.0 * quarter_lambda(c) * s.t1;
    return d;
}

ThetaState tau_field(const ThetaState& s, const CoefficientState& c) {
    require_theta1(s);
    const cplx L4 = quarter_lambda(c);
    const cplx t1sq = sq(s.t1), r = s.t1p / s.t1;
    const cplx base = sq(c.v3) * sq(c.v4) * sq(s.t2);
    ThetaState d;
    for (int k = 1; k <= 4; ++k) {
        auto [n, m] = (k == 1) ? std::pair<int, int>{3, 4} : index_triple(k);
        const cplx vk2 = sq(c.nullwert(k)), tk = s.theta(k);
        d[k - 1] = -I / (4.0 * pi) * r * r * tk + I / 2.0 * vk2 * s.t1p * s.theta(n) * s.theta(m) / t1sq +
                   I * pi / 4.0 *
                       (base - vk2 * sq(c.nullwert(m)) * sq(s.theta(n)) - vk2 * sq(c.nullwert(n)) * sq(s.theta(m))) *
                       tk / t1sq +
                   I / pi * L4 * tk;
    }
    d.t1p = -I / (4.0 * pi) * s.t1p * s.t1p * s.t1p / t1sq +
            3.0 * I / pi * (pi * pi / 4.0 * base / t1sq + L4) * s.t1p -
            I / 2.0 * pi * pi * sq(c.v2) * sq(c.v3) * sq(c.v4) * s.t2 * s.t3 * s.t4 / t1sq;
    return d;
}

cplx tau_field_theta2_alt(const ThetaState& s, const CoefficientState& c) {
    require_theta1(s);
    cplx a = s.t1p / s.t1 - pi * sq(c.v2) * s.t3 * s.t4 / (s.t1 * s.t2);
    return -I / (4.0 * pi) * a * a * s.t2 + I / 4.0 * pi * sq(c.v3) * sq(c.v4) * sq(s.t1) / s.t2 +
           I / pi * quarter_lambda(c) * s.t2;
}

cplx state_char(const ThetaState& s, ThetaCharacteristic ch) {
    auto [red, sg] = char_reduce(ch);
    auto [k, sk] = char_to_index(red);
    return double(sg * sk) * s.theta(k);
}

cplx coeff_char(const CoefficientState& c, ThetaCharacteristic ch) {
    auto [red, sg] = char_reduce(ch);
    auto [k, sk] = char_to_index(red);
    return double(sg * sk) * c.nullwert(k);
}

cplx char_z_field(ThetaCharacteristic ch, const ThetaState& s, const CoefficientState& c) {
    require_theta1(s);
    const cplx th = state_char(s, ch), v = coeff_char(c, ch);
    const cplx a = state_char(s, {ch.alpha - 1, 0}), b = state_char(s, {0, ch.beta - 1});
    return s.t1p / s.t1 * th - double(parity_sign(ch.alpha, ch.beta)) * pi * v * v * a * b / s.t1;
}

cplx char_tau_field(ThetaCharacteristic ch, const ThetaState& s, const CoefficientState& c) {
    require_theta1(s);
    const cplx th = state_char(s, ch), v2 = sq(coeff_char(c, ch));
    const cplx a = state_char(s, {ch.alpha - 1, 0}), b = state_char(s, {0, ch.beta - 1});
    const cplx va = coeff_char(c, {ch.alpha - 1, 0}), vb = coeff_char(c, {0, ch.beta - 1});
    const cplx t1sq = sq(s.t1), r = s.t1p / s.t1;
    const double sg = double(parity_sign(ch.alpha, ch.beta));
    return -I / (4.0 * pi) * r * r * th + I / 2.0 * sg * v2 * s.t1p * a * b / t1sq +
           I * pi / 4.0 * (sq(c.v3) * sq(c.v4) * sq(s.t2) - v2 * (sq(vb) * sq(a) + sq(va) * sq(b))) * th / t1sq +
           I / pi * quarter_lambda(c) * th;
}

CoefficientState constants_field_canonical(const CoefficientState& c) {
    const cplx k = pi * pi / 12.0;
    const cplx a = p4(c.v2), b = p4(c.v3), d = p4(c.v4);
    return {I / pi * (c.eta + k * (b + d)) * c.v2, I / pi * (c.eta + k * (a - d)) * c.v3,
            I / pi * (c.eta - k * (a + b)) * c.v4,
            I / pi * (2.0 * c.eta * c.eta - std::pow(pi, 4) / 144.0 * (a * a + b * b + d * d))};
}

std::pair<cplx, cplx> constants_field_ab(int alpha, int beta, const CoefficientState& c) {
    if (alpha == 0 && beta == 0) throw Error(ErrorCode::BadIndex, "(alpha,beta) = (0,0) has no eta line");
    const cplx v = coeff_char(c, {alpha, beta});
    const cplx a = p4(coeff_char(c, {alpha - 1, 0})), b = p4(coeff_char(c, {0, beta - 1}));
    const cplx dv = I / pi * (c.eta + pi * pi / 12.0 * (double(ang(beta)) * a - double(ang(alpha)) * b)) * v;
    const cplx x = p4(coeff_char(c, {alpha, 0})), y = p4(coeff_char(c, {0, beta}));
    const cplx de =
        I / pi * (2.0 * c.eta * c.eta - std::pow(pi, 4) / 72.0 * (x * x + double(ang(alpha + beta)) * x * y + y * y));
    return {dv, de};
}

CoefficientState constants_field_noncanonical(const CoefficientState& c, cplx A4, cplx B4) {
    const cplx k = pi * pi / 12.0;
    const cplx b = p4(c.v3), d = p4(c.v4);
    return {I / pi * (c.eta + k * (b + d)) * c.v2, I / pi * (c.eta + k * (b + d - 3.0 * B4 * d)) * c.v3,
            I / pi * (c.eta + k * (b + d - 3.0 * A4 * b)) * c.v4,
            I / pi * 2.0 * c.eta * c.eta -
                std::pow(pi, 3) / 72.0 * I * (b * b + (9.0 * A4 * B4 - 6.0 * A4 - 6.0 * B4 + 2.0) * b * d + d * d)};
}

cplx integrable_rule_ab(int alpha, int beta, const CoefficientState& c) {
    const double ga = ang(alpha), gb = ang(beta);
    return I / pi *
           (c.eta + pi * pi / 24.0 * ((2.0 - 3.0 * ga - 3.0 * gb) * p4(c.v4) - (1.0 - 3.0 * gb) * p4(c.v3))) *
           coeff_char(c, {alpha, beta});
}

cplx integrable_rule_k(int k, const CoefficientState& c) {
    if (k < 2 || k > 4) throw Error(ErrorCode::BadIndex, "integrable rule needs k in {2,3,4}");
    const double kk = k;
    return I / pi *
           (c.eta + pi * pi / 24.0 *
                        (2.0 * (3 * kk * kk - 18 * kk + 25) * p4(c.v4) - (3 * kk * kk - 15 * kk + 16) * p4(c.v3))) *
           c.nullwert(k);
}

NoncanonicalIntegrals algebraic_integrals(const ThetaState& s, const CoefficientState& c) {
    require_theta1(s);
    NoncanonicalIntegrals r;
    const cplx t1sq = sq(s.t1);
    r.A4 = (sq(c.v2) * sq(s.t4) - sq(c.v4) * sq(s.t2)) / (sq(c.v3) * t1sq);
    r.B4 = (sq(c.v2) * sq(s.t3) - sq(c.v3) * sq(s.t2)) / (sq(c.v4) * t1sq);
    r.Afrak4 = (r.A4 * p4(c.v3) - r.B4 * p4(c.v4)) / p4(c.v2);
    return r;
}

std::array<cplx, 3> quadratic_identity_residuals(const ThetaState& s, const CoefficientState& c) {
    return {sq(c.v2) * sq(s.t4) - sq(c.v4) * sq(s.t2) - sq(c.v3) * sq(s.t1),
            sq(c.v2) * sq(s.t3) - sq(c.v3) * sq(s.t2) - sq(c.v4) * sq(s.t1),
            sq(c.v4) * sq(s.t3) - sq(c.v3) * sq(s.t4) + sq(c.v2) * sq(s.t1)};
}

std::map<std::string, ScalarResidual> scalar_equation_residuals(const ModularParameter& tau, cplx z,
                                                                const EvalOptions& opts) {
    std::map<std::string, ScalarResidual> out;
    std::array<J, 3> v;
    for (int k = 2; k <= 4; ++k) {
        v[k - 2] = nullwert_jet(k, tau, opts);
        const std::string ks = std::to_string(k);
        out["jacobi_nullwert_k" + ks] = jacobi_c_residual(J(1.0) / (v[k - 2] * v[k - 2]));
        out["log_derivative_k" + ks] = log_derivative_residual(jlog(v[k - 2]).diff());
    }
    const J e = eta_jet(tau, opts);
    out["chazy"] = chazy_residual(e);

    const cplx v2 = v[0].c[0], v3 = v[1].c[0], v4 = v[2].c[0], eta = e.c[0];
    const cplx L = 4.0 * (eta + pi * pi / 12.0 * (p4(v3) + p4(v4)));
    const cplx k3 = pi * pi / 3.0;
    std::array<J, 4> th;
    for (int k = 1; k <= 4; ++k) th[k - 1] = theta_z_jet(k, z, tau, opts);
    for (int k = 1; k <= 4; ++k) {
        const std::string ks = std::to_string(k);
        J lzz = jlog(th[k - 1]).diff().diff();
        J F = lzz + J(4.0 * eta);
        cplx f0 = F.deriv(0), f1 = F.deriv(1);
        out["theta_cubic_k" + ks] = residual({f1 * f1, 4.0 * (f0 + k3 * (p4(v3) + p4(v4))) *
                                                           (f0 + k3 * (p4(v2) - p4(v4))) *
                                                           (f0 - k3 * (p4(v2) + p4(v3)))});
        J G = lzz + J(L);
        cplx g0 = G.deriv(0), g1 = G.deriv(1), g2 = G.deriv(2), g3 = G.deriv(3);
        out["theta_third_order_k" + ks] =
            residual({g0 * g0 * g3, -2.0 * g0 * g1 * g2, g1 * g1 * g1, 4.0 * g0 * g0 * g0 * g1});
        J Gp = G.diff();
        J H = (Gp * Gp / G).diff() / Gp;
        out["theta_reduced_k" + ks] = residual({H.diff().c[0], 8.0 * Gp.c[0]});
    }
    out["quartic_integral"] = {std::pow(p4(v3) - p4(v2) - p4(v4), 3), std::pow(std::abs(v3), 12)};

    J P = th[1] * th[1] / (th[0] * th[0]);
    cplx P0 = P.c[0], P1 = P.deriv(1);
    out["p_equation"] = residual({P1 * P1, -4.0 * pi * pi * (sq(v4) * P0 + sq(v3)) * (sq(v3) * P0 + sq(v4)) * P0});
    J R = th[0] / th[3];
    cplx R0 = R.c[0], R1 = R.deriv(1);
    out["theta14_ratio"] =
        residual({R1 * R1, -pi * pi * (sq(v3) * R0 * R0 - sq(v2)) * (sq(v2) * R0 * R0 - sq(v3))});
    return out;
}

std::map<std::string, ScalarResidual> transformed_solution_residuals(const UnimodularMatrix& M, ThetaCharacteristic ch,
                                                                     const ModularParameter& tau,
                                                                     const EvalOptions& opts) {
    require_unimodular(M);
    auto [red, sg] = char_reduce(ch);
    if (red.alpha == 1 && red.beta == 1) throw Error(ErrorCode::BadIndex, "theta[1;1] has a vanishing nullwert");
    const ModularParameter T(M.act(tau.tau));
    J t;
    t.c[0] = tau.tau;
    t.c[1] = 1.0;
    const J s = J(double(M.c)) * t + J(double(M.d));
    const J Tj = (J(double(M.a)) * t + J(double(M.b))) / s;

    std::array<cplx, NJ> fv, fe;
    double fact = 1.0;
    const cplx h = 4.0 * pi * I;
    for (int n = 0; n < NJ; ++n) {
        if (n > 0) fact *= n;
        fv[n] = theta_char_dz(ch, 2 * n, 0.0, T, opts) / (std::pow(h, n) * fact);
        fe[n] = (n == 0 ? weierstrass_eta(T, opts) : weierstrass_eta_deriv(T, n, opts)) / fact;
    }
    const J v = jcompose<NJ>(fv, Tj);
    const J e = jcompose<NJ>(fe, Tj);

    std::map<std::string, ScalarResidual> out;
    out["jacobi_nullwert"] = jacobi_c_residual(s / (v * v));
    out["log_derivative"] = log_derivative_residual((jlog(v) - J(0.5) * jlog(s)).diff());
    out["chazy"] = chazy_residual(e / (s * s) + J(pi * I * double(M.c) / 2.0) / s);
    return out;
}

DHTriple darboux_halphen(const CoefficientState& c) {
    // 2 * 4 pi i * (i/pi)(...) = -8 (...)
    auto f = constants_field_canonical(c);
    const cplx h = 4.0 * pi * I;
    return {2.0 * h * f.v2 / c.v2, 2.0 * h * f.v3 / c.v3, 2.0 * h * f.v4 / c.v4};
}

std::map<std::string, ScalarResidual> darboux_halphen_residuals(const ModularParameter& tau,
                                                                const EvalOptions& opts) {
    const cplx h = 4.0 * pi * I;
    std::array<J, 3> X;
    for (int k = 2; k <= 4; ++k) X[k - 2] = J(2.0 * h) * jlog(nullwert_jet(k, tau, opts)).diff();
    std::map<std::string, ScalarResidual> out;
    const char* names[3] = {"dh_x", "dh_y", "dh_z"};
    for (int i = 0; i < 3; ++i) {
        const cplx x = X[i].c[0], y = X[(i + 1) % 3].c[0], z = X[(i + 2) % 3].c[0];
        out[names[i]] = residual({h * X[i].deriv(1), -(y + z) * x, y * z});
    }
    const J& x = X[0];
    const cplx x0 = x.deriv(0), x1 = h * x.deriv(1), x2 = h * h * x.deriv(2), x3 = h * h * h * x.deriv(3);
    ScalarResidual r;
    r.value = x3 * (x1 - x0 * x0) - (x2 * (x2 - 4.0 * x0 * x0 * x0) - 2.0 * x1 * x1 * (x1 - 3.0 * x0 * x0));
    r.scale = std::abs(x3 * x1);
    out["dh_single"] = r;
    return out;
}

RenormalizedFields renormalized_fields(const ThetaState& s, const CoefficientState& c) {
    require_theta1(s);
    RenormalizedFields r;
    r.bold = {s.t1, pi * c.v3 * c.v4 * s.t2, pi * c.v2 * c.v4 * s.t3, pi * c.v2 * c.v3 * s.t4, s.t1p};
    r.Lambda = 4.0 * quarter_lambda(c);
    const cplx L = r.Lambda;
    const auto& b = r.bold;
    const cplx b1sq = sq(b.t1), rp = b.t1p / b.t1;

    r.dz = {b.t1p, rp * b.t2 - b.t3 * b.t4 / b.t1, rp * b.t3 - b.t2 * b.t4 / b.t1, rp * b.t4 - b.t2 * b.t3 / b.t1,
            b.t1p * b.t1p / b.t1 - sq(b.t2) / b.t1 - L * b.t1};

    const auto in = algebraic_integrals(s, c);
    const auto f = constants_field_noncanonical(c, in.A4, in.B4);
    const cplx h = 4.0 * pi * I;
    r.log_dt = {h * f.v2 / c.v2, h * f.v3 / c.v3, h * f.v4 / c.v4};
    const cplx l2 = r.log_dt[0], l3 = r.log_dt[1], l4 = r.log_dt[2];
    const cplx p2 = sq(b.t1p) / b1sq;

    r.dt.t1 = sq(b.t1p) / b.t1 - sq(b.t2) / b.t1 - L * b.t1;
    r.dt.t1p = b.t1p * b.t1p * b.t1p / b1sq - 3.0 * (sq(b.t2) + L * b1sq) * b.t1p / b1sq +
               2.0 * b.t2 * b.t3 * b.t4 / b1sq;
    r.dt.t2 = p2 * b.t2 - 2.0 * b.t1p * b.t3 * b.t4 / b1sq - (sq(b.t2) - sq(b.t3) - sq(b.t4)) * b.t2 / b1sq -
              (L - l3 - l4) * b.t2;
    r.dt.t3 = p2 * b.t3 - 2.0 * b.t1p * b.t2 * b.t4 / b1sq + sq(b.t4) * b.t3 / b1sq - (L - l2 - l4) * b.t3;
    r.dt.t4 = p2 * b.t4 - 2.0 * b.t1p * b.t2 * b.t3 / b1sq + sq(b.t3) * b.t4 / b1sq - (L - l2 - l3) * b.t4;

    r.compat = {l2 + L, l3 + L - (sq(b.t3) - sq(b.t2)) / b1sq, l4 + L - (sq(b.t4) - sq(b.t2)) / b1sq};
    return r;
}

cplx renormalized_lambda_relation(const CoefficientState& c, const NoncanonicalIntegrals& in) {
    const auto f = constants_field_noncanonical(c, in.A4, in.B4);
    const cplx h = 4.0 * pi * I;
    const cplx L = 4.0 * quarter_lambda(c);
    const cplx Ldot =
        h * 4.0 * (f.eta + pi * pi / 3.0 * (c.v3 * c.v3 * c.v3 * f.v3 + c.v4 * c.v4 * c.v4 * f.v4));
    const cplx l3 = h * f.v3 / c.v3, l4 = h * f.v4 / c.v4;
    return Ldot - 2.0 * (l3 + l4) * L - 2.0 * l3 * l4;
}

std::pair<ThetaState, CoefficientState> noncanonical_solution(const SolutionConstants& k, cplx z, cplx tau,
                                                              const EvalOptions& opts) {
    const auto& M = k.matrix;
    require_unimodular(M);
    const cplx s = double(M.c) * tau + double(M.d);
    const ModularParameter T(M.act(tau));
    const cplx rs = std::sqrt(s);
    const cplx ze = z + k.Ecap;
    const cplx w = ze / s + k.Dcap;
    const cplx f = std::exp(-pi * I * double(M.c) * ze * ze / s) / rs;
    const cplx A = k.Acap, B = k.Bcap, C = k.Ccap, d = k.d_const;

    const cplx th1 = theta_eval(1, w, T, opts);
    ThetaState st;
    const cplx c1 = d * C / (A * B) * f;
    st.t1 = c1 * th1;
    st.t2 = d * C * f * theta_eval(2, w, T, opts);
    st.t3 = C / A * f * theta_eval(3, w, T, opts);
    st.t4 = C / B * f * theta_eval(4, w, T, opts);
    st.t1p = c1 * (theta1_prime_eval(w, T, opts) - 2.0 * pi * I * double(M.c) * ze * th1) / s;

    const auto v = nullwerte(T, opts);
    CoefficientState co;
    co.v2 = d * v.v2 / rs;
    co.v3 = v.v3 / (A * rs);
    co.v4 = v.v4 / (B * rs);
    co.eta = (weierstrass_eta(T, opts) +
              pi * pi / 12.0 * ((1.0 - 1.0 / p4(A)) * p4(v.v3) + (1.0 - 1.0 / p4(B)) * p4(v.v4))) /
                 (s * s) +
             pi * I * double(M.c) / (2.0 * s);
    return {st, co};
}

ThetaState complete_z_solution(const SolutionConstants& k, const CoefficientState& c, cplx z,
                               const EvalOptions& opts) {
    const ModularParameter tb(k.base_tau);
    const auto vb = nullwerte(tb, opts);
    const cplx kap = k.kappa;
    const cplx M = kap * kap * (weierstrass_eta(tb, opts) + pi * pi / 12.0 * (p4(vb.v3) + p4(vb.v4))) -
                   quarter_lambda(c);
    const cplx w = kap * z + k.Bcap;
    const cplx za = z + k.Acap;
    const cplx f = k.Ccap * std::exp(2.0 * M * za * za);
    const cplx de = dedekind_eta(tb, opts);
    const cplx c1 = c.v2 * c.v3 * c.v4 / (2.0 * de * de * de);
    const cplx th1 = theta_eval(1, w, tb, opts);
    ThetaState st;
    st.t1 = c1 * f * th1;
    st.t2 = kap * c.v2 / vb.v2 * f * theta_eval(2, w, tb, opts);
    st.t3 = kap * c.v3 / vb.v3 * f * theta_eval(3, w, tb, opts);
    st.t4 = kap * c.v4 / vb.v4 * f * theta_eval(4, w, tb, opts);
    st.t1p = c1 * f * (kap * theta1_prime_eval(w, tb, opts) + 4.0 * M * za * th1);
    return st;
}

ThetaState linear_exponential_solution(cplx A, cplx B, cplx C, cplx z, const ModularParameter& tau,
                                       const EvalOptions& opts) {
    const cplx e = C * std::exp(pi * I * A * (2.0 * z + A * tau.tau));
    const cplx w = z + A * tau.tau + B;
    ThetaState st;
    for (int k = 1; k <= 4; ++k) st[k - 1] = e * theta_eval(k, w, tau, opts);
    st.t1p = e * (theta1_prime_eval(w, tau, opts) + 2.0 * pi * I * A * theta_eval(1, w, tau, opts));
    return st;
}

ThetaState flip_pair(const ThetaState& s, int j, int k) {
    if (j < 1 || j > 4 || k < 1 || k > 4 || j == k) throw Error(ErrorCode::BadIndex, "flip needs two indices in 1..4");
    ThetaState r = s;
    for (int i : {j, k}) {
        r[i - 1] = -r[i - 1];
        if (i == 1) r.t1p = -r.t1p;
    }
    return r;
}

GradientFlowResult gradient_flow_check(const CoefficientState& c, const NoncanonicalIntegrals& in) {
    const cplx v2_4 = p4(c.v2);
    const cplx H = (in.A4 * p4(c.v3) - in.B4 * p4(c.v4)) / v2_4;
    if (std::abs(H) < 1e-14) throw Error(ErrorCode::DegenerateHamiltonian, "Hamiltonian vanishes");
    const auto f = constants_field_noncanonical(c, in.A4, in.B4);
    Eigen::Vector4cd grad(-4.0 * H / c.v2, 4.0 * in.A4 * c.v3 * c.v3 * c.v3 / v2_4,
                          -4.0 * in.B4 * c.v4 * c.v4 * c.v4 / v2_4, 0.0);
    const cplx U = f.v3, V = f.v4, W = f.eta;
    Eigen::Matrix4cd Om = Eigen::Matrix4cd::Zero();
    Om(0, 1) = U;
    Om(0, 2) = V;
    Om(0, 3) = W;
    Om(1, 0) = -U;
    Om(2, 0) = -V;
    Om(3, 0) = -W;
    Om *= c.v2 / (4.0 * H);
    Eigen::Vector4cd flow = Om * grad;
    GradientFlowResult r{};
    r.H = H;
    r.residual = 0.0;
    for (int i = 0; i < 4; ++i) r.residual = std::max(r.residual, std::abs(flow(i) - f[i]));
    r.antisymmetry = (Om + Om.transpose()).cwiseAbs().maxCoeff();
    r.det = std::abs(Om.determinant());
    return r;
}

ModulusResult modulus_from_integrals(const CoefficientState& c, const NoncanonicalIntegrals& in,
                                     const EvalOptions& opts) {
    const cplx a8 = sq(in.Afrak4), A8 = sq(in.A4), B8 = sq(in.B4);
    const cplx x = a8 * sq(p4(c.v2)), y = A8 * sq(p4(c.v3)), w = B8 * sq(p4(c.v4));
    const cplx den = a8 * A8 * B8 * sq(p4(c.v2)) * sq(p4(c.v3)) * sq(p4(c.v4));
    if (std::abs(den) == 0.0) throw Error(ErrorCode::DegenerateModulus, "integrals or nullwerte vanish");
    const cplx Jv = std::pow(x + y + w, 3) / (54.0 * den);
    return {Jv, modular_inversion_alt(Jv, opts)};
}

}  // namespace tf
