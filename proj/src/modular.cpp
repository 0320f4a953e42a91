#include "thetaforge/modular.hpp"

#include <cmath>

#include "thetaforge/constants.hpp"
#include "thetaforge/theta_core.hpp"

namespace tf {

void require_unimodular(const UnimodularMatrix& M) {
    if (M.det() != 1) throw Error(ErrorCode::BadIndex, "matrix determinant must be 1");
}

std::pair<ModularParameter, UnimodularMatrix> reduce_to_fundamental_domain(const ModularParameter& tp) {
    cplx t = tp.tau;
    UnimodularMatrix M;
    for (int it = 0; it < 10000; ++it) {
        double n = std::round(t.real());
        if (n != 0.0) {
            t -= n;
            M = UnimodularMatrix{1, -long(n), 0, 1} * M;
        }
        if (std::norm(t) < 1.0 - 1e-15) {
            t = -1.0 / t;
            M = UnimodularMatrix{0, -1, 1, 0} * M;
        } else {
            // recompute from the integer matrix to avoid drift
            return {ModularParameter(M.act(tp.tau)), M};
        }
    }
    throw Error(ErrorCode::NonModularTau, "fundamental-domain reduction did not terminate");
}

namespace {

// c > 0, d > 0: closed form with the Dedekind-type sum, exponent kept as an exact rational
cplx eta_multiplier_pos(long a, long c, long d) {
    long S = 0;
    for (long k = c / d + 1; k <= c - 1; ++k) S += ((d * k) / c) * k;
    // 12c * exponent = (a-d) - 2c d(2c-3) + 3c(c-1) - 3c + 12 S
    long num = (a - d) - 2 * c * d * (2 * c - 3) + 3 * c * (c - 1) - 3 * c + 12 * S;
    long den = 12 * c;
    long r = ((num % (2 * den)) + 2 * den) % (2 * den);
    return std::exp(I * pi * (double(r) / double(den)));
}

}  // namespace

cplx eta_multiplier(const UnimodularMatrix& M) {
    require_unimodular(M);
    if (M.c < 0) return I * eta_multiplier(M.neg());
    if (M.c == 0) {
        if (M.d == 1) return std::exp(I * pi * double(M.b % 24) / 12.0);
        return std::exp(-I * pi * double(M.b % 24) / 12.0) / I;
    }
    if (M.d > 0) return eta_multiplier_pos(M.a, M.c, M.d);
    // M = M' T^n with d' = c n + d > 0
    long n = (-M.d) / M.c + 1;
    UnimodularMatrix Mp{M.a, M.a * n + M.b, M.c, M.c * n + M.d};
    return eta_multiplier_pos(Mp.a, Mp.c, Mp.d) * std::exp(-I * pi * double(n % 24) / 12.0);
}

CharacteristicMap characteristic_map(long alpha, long beta, const UnimodularMatrix& M) {
    CharacteristicMap cm;
    cm.alpha_p = M.d * alpha - M.c * beta;
    cm.beta_p = -M.b * alpha + M.a * beta;
    // E = exp(pi i/4 {2 alpha (beta b c - d + 1) - beta c (beta a - 2) - alpha^2 d b}), exponent mod 8
    long e = 2 * alpha * (beta * M.b * M.c - M.d + 1) - beta * M.c * (beta * M.a - 2) - alpha * alpha * M.d * M.b;
    e = ((e % 8) + 8) % 8;
    cm.e_multiplier = std::exp(I * pi * double(e) / 4.0);
    return cm;
}

std::pair<long, long> characteristic_map_inverse(long ap, long bp, const UnimodularMatrix& M) {
    return {M.a * ap + M.c * bp, M.b * ap + M.d * bp};
}

TransformResult theta_transform(ThetaCharacteristic ch, const UnimodularMatrix& M0, cplx z, const ModularParameter& tau,
                                const EvalOptions& opts) {
    require_unimodular(M0);
    // same PSL2 element with c > 0, or c = 0 and d = 1
    UnimodularMatrix M = (M0.c < 0 || (M0.c == 0 && M0.d < 0)) ? M0.neg() : M0;
    TransformResult r;
    r.used = M;
    r.s = double(M.c) * tau.tau + double(M.d);
    r.map = characteristic_map(ch.alpha, ch.beta, M);
    cplx N3 = std::pow(eta_multiplier(M), 3);
    r.value = r.map.e_multiplier * N3 * std::sqrt(r.s) * std::exp(I * pi * double(M.c) * z * z / r.s) *
              theta_char_reduced({ch.alpha - 1, ch.beta - 1}, z, tau, opts);
    return r;
}

cplx gamma2_phase(int k, long m, long n, long p, long q) {
    switch (k) {
        case 1: return 1.0;
        case 2: return ipow(2 * q * (p - 1) + p);
        case 3: return ipow(2 * q * (p + 1) - m * (2 * n + 1) + p);
        case 4: return ipow(2 * n * (m - 1) - m);
        default: throw Error(ErrorCode::BadIndex, "theta index must be 1..4");
    }
}

cplx gamma2_theta_transform(int k, long m, long n, long p, long q, cplx z, const ModularParameter& tau,
                            const EvalOptions& opts) {
    UnimodularMatrix M{2 * n + 1, 2 * m, 2 * p, 2 * q + 1};
    require_unimodular(M);
    cplx s = double(M.c) * tau.tau + double(M.d);
    return gamma2_phase(k, m, n, p, q) * std::pow(eta_multiplier(M), 3) * std::sqrt(s) *
           std::exp(I * pi * double(M.c) * z * z / s) * theta_eval(k, z, tau, opts);
}

namespace {
long floor_div2(long b) { return (b >= 0) ? b / 2 : -((-b + 1) / 2); }
}  // namespace

cplx theta_prime_shift(ThetaCharacteristic ch, long n, long m, cplx z, const ModularParameter& tau,
                       const EvalOptions& opts) {
    cplx t1 = theta_eval(1, z, tau, opts);
    cplx t1p = theta_dz(1, 1, z, tau, opts);
    if (std::abs(t1) < 1e-13 * std::max(1.0, std::abs(t1p)))
        throw Error(ErrorCode::ThetaOneVanishes, "theta_1 vanishes at z");
    long A = ch.alpha + m, B = ch.beta + n;
    double md = double(m);
    cplx vAB = theta_char_reduced({A, B}, 0.0, tau, opts);
    cplx pair = theta_char_reduced({A - 1, 0}, z, tau, opts) * theta_char_reduced({0, B - 1}, z, tau, opts);
    double sg = ((A * floor_div2(B)) % 2 != 0) ? -1.0 : 1.0;
    cplx brace = (t1p - I * pi * md * t1) * theta_char_reduced({A, B}, z, tau, opts) - sg * pi * vAB * vAB * pair;
    return ipow(-m * B) * std::exp(-I * pi * md * (4.0 * z + md * tau.tau) / 4.0) * brace / t1;
}

cplx theta_prime_halfperiod_constant(ThetaCharacteristic ch, long n, long m, const ModularParameter& tau,
                                     const EvalOptions& opts) {
    long A = ch.alpha + m, B = ch.beta + n;
    double md = double(m);
    cplx e3 = std::pow(dedekind_eta(tau, opts), 3);
    double odd = ((A * B) % 2 != 0) ? 2.0 : 0.0;  // 1 - (-1)^{AB}
    cplx inner = ipow(B) * odd * e3 - md * theta_char_reduced({A, B}, 0.0, tau, opts);
    return ipow(1 - B * m) * pi * inner * std::exp(-I * pi * md * md * tau.tau / 4.0);
}

cplx theta1_prime_transform(const UnimodularMatrix& M, cplx z, const ModularParameter& tau, const EvalOptions& opts) {
    require_unimodular(M);
    cplx s = double(M.c) * tau.tau + double(M.d);
    cplx t1 = theta_eval(1, z, tau, opts), t1p = theta_dz(1, 1, z, tau, opts);
    return std::pow(eta_multiplier(M), 3) * std::sqrt(s) * std::exp(I * pi * double(M.c) * z * z / s) *
           (s * t1p + 2.0 * pi * I * double(M.c) * z * t1);
}

}  // namespace tf
