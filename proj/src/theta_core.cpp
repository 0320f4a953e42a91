#include "thetaforge/theta_core.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace tf {

const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonModularTau: return "NonModularTau";
        case ErrorCode::SeriesNotConverged: return "SeriesNotConverged";
        case ErrorCode::RouteMismatch: return "RouteMismatch";
        case ErrorCode::DegenerateDiscriminant: return "DegenerateDiscriminant";
        case ErrorCode::RepresentationMismatch: return "RepresentationMismatch";
        case ErrorCode::ThetaOneVanishes: return "ThetaOneVanishes";
        case ErrorCode::BadIndex: return "BadIndex";
        case ErrorCode::DegenerateHamiltonian: return "DegenerateHamiltonian";
        case ErrorCode::CNormalizationFailed: return "CNormalizationFailed";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::EquianharmonicBranch: return "EquianharmonicBranch";
        case ErrorCode::BranchCutArgument: return "BranchCutArgument";
        case ErrorCode::DegenerateModulus: return "DegenerateModulus";
        case ErrorCode::PoleOfMap: return "PoleOfMap";
        case ErrorCode::LatticePoint: return "LatticePoint";
        case ErrorCode::PoleOfRatio: return "PoleOfRatio";
        case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
        case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownSuite: return "UnknownSuite";
    }
    return "Unknown";
}

int default_max_terms() {
    // read once; later changes to the environment are ignored on purpose
    static const int v = [] {
        const char* s = std::getenv("THETA_FORGE_MAX_TERMS");
        if (!s || !*s) return 200;
        char* end = nullptr;
        long n = std::strtol(s, &end, 10);
        if (end == s || *end != '\0' || n < 8 || n > 100000) return 200;
        return static_cast<int>(n);
    }();
    return v;
}

ModularParameter::ModularParameter(cplx t) : tau(t) {
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag()) || !(t.imag() > 0.0))
        throw Error(ErrorCode::NonModularTau, "Im(tau) must be positive");
    nome = std::exp(I * pi * t);
}

cplx ipow(long n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

namespace {

void check_opts(const EvalOptions& o) {
    if (!(o.rel_tol > 0.0) || o.max_terms < 8)
        throw Error(ErrorCode::SeriesNotConverged, "invalid EvalOptions");
}

// d^n/dx^n of sin or cos at x
cplx trig_d(bool is_sin, int n, cplx x) {
    // sin^{(n)}(x) = sin(x + n pi/2), cos^{(n)}(x) = cos(x + n pi/2)
    cplx s = std::sin(x), c = std::cos(x);
    int r = n % 4;
    if (is_sin) {
        switch (r) {
            case 0: return s;
            case 1: return c;
            case 2: return -s;
            default: return -c;
        }
    }
    switch (r) {
        case 0: return c;
        case 1: return -s;
        case 2: return -c;
        default: return s;
    }
}

}  // namespace

cplx theta_dz(int k, int n, cplx z, const ModularParameter& tp, const EvalOptions& opts) {
    if (k < 1 || k > 4) throw Error(ErrorCode::BadIndex, "theta index must be 1..4");
    if (n < 0) throw Error(ErrorCode::BadIndex, "negative derivative order");
    check_opts(opts);
    const cplx tau = tp.tau;
    const bool half = (k == 1 || k == 2);
    const bool alt = (k == 1 || k == 4);
    const bool is_sin = (k == 1);

    cplx sum = 0.0;
    double abs_sum = 0.0;
    if (!half && n == 0) {
        sum = 1.0;
        abs_sum = 1.0;
    }
    double prev = HUGE_VAL;
    int start = half ? 0 : 1;
    for (int j = start; j < start + opts.max_terms; ++j) {
        double r = half ? j + 0.5 : double(j);
        double a = 2.0 * pi * r;  // frequency in z
        cplx q_r2 = std::exp(I * pi * tau * (r * r));
        cplx term = 2.0 * q_r2 * std::pow(a, n) * trig_d(is_sin, n, a * z);
        if (alt && (j % 2)) term = -term;
        sum += term;
        // judge truncation on the envelope: the trig factor can vanish (z = 1/4 for cos) and
        // end the loop a term early
        double m = 2.0 * std::abs(q_r2) * std::pow(a, n) * std::cosh(a * z.imag());
        abs_sum += m;
        if (m <= prev && m <= opts.rel_tol * abs_sum) return sum;
        if (m == 0.0 && prev == 0.0) return sum;
        prev = m;
    }
    throw Error(ErrorCode::SeriesNotConverged, "theta series hit max_terms");
}

cplx theta_eval(int k, cplx z, const ModularParameter& tau, const EvalOptions& opts) {
    return theta_dz(k, 0, z, tau, opts);
}

cplx theta_deriv(int k, int nz, int nt, cplx z, const ModularParameter& tau, const EvalOptions& opts) {
    if (nt < 0) throw Error(ErrorCode::BadIndex, "negative derivative order");
    return theta_dz(k, nz + 2 * nt, z, tau, opts) / std::pow(4.0 * pi * I, nt);
}

cplx theta1_prime_eval(cplx z, const ModularParameter& tau, const EvalOptions& opts) {
    return theta_dz(1, 1, z, tau, opts);
}

cplx theta_char_dz(ThetaCharacteristic ch, int n, cplx z, const ModularParameter& tp, const EvalOptions& opts) {
    check_opts(opts);
    if (n < 0) throw Error(ErrorCode::BadIndex, "negative derivative order");
    const cplx tau = tp.tau;
    const double ha = 0.5 * double(ch.alpha);
    // Gaussian peak of |term| sits at r = -Im z / Im tau
    long kc = std::lround(-z.imag() / tau.imag() - ha);
    // exact phase exp(pi i r beta) = (-1)^{k beta} i^{alpha beta}
    const cplx ab_phase = ipow(ch.alpha * ch.beta);
    auto term = [&](long k) {
        double r = double(k) + ha;
        cplx t = std::exp(I * pi * (r * r * tau + 2.0 * r * z)) * ab_phase;
        if ((k * ch.beta) % 2 != 0) t = -t;
        if (n > 0) t *= std::pow(2.0 * pi * I * r, n);
        return t;
    };
    cplx sum = term(kc);
    double abs_sum = std::abs(sum);
    for (int j = 1; j <= opts.max_terms; ++j) {
        cplx a = term(kc + j), b = term(kc - j);
        sum += a + b;
        double m = std::max(std::abs(a), std::abs(b));
        abs_sum += std::abs(a) + std::abs(b);
        if (j >= 2 && m <= opts.rel_tol * abs_sum) return sum;
        if (j >= 2 && m == 0.0) return sum;
    }
    throw Error(ErrorCode::SeriesNotConverged, "bilateral theta series hit max_terms");
}

cplx theta_char_eval(ThetaCharacteristic ch, cplx z, const ModularParameter& tau, const EvalOptions& opts) {
    return theta_char_dz(ch, 0, z, tau, opts);
}

std::pair<ThetaCharacteristic, int> char_reduce(ThetaCharacteristic ch) {
    auto md = [](long v) { return ((v % 2) + 2) % 2; };
    long a0 = md(ch.alpha), b0 = md(ch.beta);
    long n = (ch.beta - b0) / 2;
    int sign = (a0 * n) % 2 != 0 ? -1 : 1;
    return {{a0, b0}, sign};
}

std::pair<int, int> char_to_index(ThetaCharacteristic ch) {
    auto [r, s] = char_reduce(ch);
    if (r.alpha == 1 && r.beta == 1) return {1, -s};
    if (r.alpha == 1) return {2, s};
    if (r.beta == 0) return {3, s};
    return {4, s};
}

ThetaCharacteristic index_to_char(int k) {
    switch (k) {
        case 1: return {1, 1};
        case 2: return {1, 0};
        case 3: return {0, 0};
        case 4: return {0, 1};
        default: throw Error(ErrorCode::BadIndex, "theta index must be 1..4");
    }
}

cplx theta_char_reduced(ThetaCharacteristic ch, cplx z, const ModularParameter& tau, const EvalOptions& opts) {
    auto [k, s] = char_to_index(ch);
    return double(s) * theta_eval(k, z, tau, opts);
}

cplx half_period_shift(ThetaCharacteristic ch, long n, long m, cplx z, const ModularParameter& tp,
                       const EvalOptions& opts) {
    const cplx tau = tp.tau;
    ThetaCharacteristic sh{ch.alpha + m, ch.beta + n};
    cplx ph = ipow(-(ch.beta + n) * m);
    double md = double(m);
    return ph * theta_char_reduced(sh, z, tp, opts) * std::exp(-I * pi * md * (4.0 * z + md * tau) / 4.0);
}

cplx any_theta_to_theta1(ThetaCharacteristic ch, cplx z, const ModularParameter& tp, const EvalOptions& opts) {
    const cplx tau = tp.tau;
    double a = double(ch.alpha), b = double(ch.beta);
    cplx w = z - a * tau / 2.0 - b / 2.0;
    return ipow(ch.alpha) * theta_char_reduced({ch.alpha - 1, ch.beta - 1}, w, tp, opts) *
           std::exp(-I * pi * a * (z - a * tau / 4.0));
}

}  // namespace tf
