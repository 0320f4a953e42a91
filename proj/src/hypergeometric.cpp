#include <cmath>

#include "thetaforge/inversion.hpp"

namespace tf {

namespace {

cplx series_2f1(cplx a, cplx b, cplx c, cplx x) {
    cplx t = 1.0, s = 1.0;
    double prev = HUGE_VAL;
    for (int n = 0; n < 5000; ++n) {
        t *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) * x;
        s += t;
        double m = std::abs(t);
        if ((m <= prev && m <= 1e-17 * std::abs(s)) || m == 0.0) return s;
        prev = m;
    }
    throw Error(ErrorCode::SeriesNotConverged, "2F1 series hit the term limit");
}

// Taylor step of x(1-x)y'' + (c - (a+b+1)x)y' - ab y = 0 from p to p + h
std::pair<cplx, cplx> taylor_step(cplx a, cplx b, cplx c, cplx p, cplx h, cplx y, cplx yp) {
    const cplx A0 = p * (1.0 - p), A1 = 1.0 - 2.0 * p;
    const cplx apb1 = a + b + 1.0, B0 = c - apb1 * p, C = -a * b;
    cplx yn = y, yn1 = yp;  // y_n, y_{n+1}
    cplx hn = 1.0;
    cplx val = y, der = yp;
    for (int n = 0; n < 400; ++n) {
        double nd = n;
        cplx yn2 = -((A1 * nd + B0) * (nd + 1.0) * yn1 + (-nd * (nd - 1.0) - apb1 * nd + C) * yn) /
                   (A0 * (nd + 2.0) * (nd + 1.0));
        hn *= h;  // h^{n+1}
        cplx tv = yn1 * hn, td = yn2 * (nd + 2.0) * hn;
        val += tv;
        der += td;
        yn = yn1;
        yn1 = yn2;
        if (n > 8 && std::abs(tv) + std::abs(td) <= 1e-18 * (std::abs(val) + std::abs(der))) break;
    }
    return {val, der};
}

// march from p0 (where y, y' are known) to x in steps of half the distance to {0, 1}
std::pair<cplx, cplx> march(cplx a, cplx b, cplx c, cplx p, cplx x, cplx y, cplx yp) {
    for (int it = 0; it < 100000; ++it) {
        cplx rem = x - p;
        double d = std::abs(rem);
        if (d == 0.0) return {y, yp};
        double R = std::min(std::abs(p), std::abs(p - 1.0));
        double step = std::min(d, 0.5 * R);
        cplx h = rem * (step / d);
        auto [v, dv] = taylor_step(a, b, c, p, h, y, yp);
        y = v;
        yp = dv;
        p = (step == d) ? x : p + h;
    }
    throw Error(ErrorCode::SeriesNotConverged, "2F1 continuation did not reach the target");
}

}  // namespace

cplx hyp2f1(cplx a, cplx b, cplx c, cplx x) {
    if (c.imag() == 0.0 && c.real() <= 0.0 && c.real() == std::round(c.real()))
        throw Error(ErrorCode::BadIndex, "2F1 with c a non-positive integer");
    if (std::abs(x) <= 0.6) return series_2f1(a, b, c, x);
    if (std::abs(x - 1.0) < 1e-15) throw Error(ErrorCode::BranchCutArgument, "2F1 at its singular point x = 1");
    cplx p0 = 0.5 * x / std::abs(x);
    cplx y = series_2f1(a, b, c, p0), yp = a * b / c * series_2f1(a + 1.0, b + 1.0, c + 1.0, p0);
    // on the cut itself take the limit from below
    if (x.imag() == 0.0 && x.real() > 1.0) {
        cplx w = cplx(1.0, -0.5);
        auto [y1, yp1] = march(a, b, c, p0, w, y, yp);
        return march(a, b, c, w, x, y1, yp1).first;
    }
    return march(a, b, c, p0, x, y, yp).first;
}

namespace {

cplx principal(cplx z) { return cplx(z.real() + 0.0, z.imag() + 0.0); }  // -0.0 -> +0.0 so arg is in (-pi, pi]

cplx legendre_P3(double nu, double mu, cplx z) {
    cplx pre = (mu == 0.0) ? cplx(1.0)
                           : std::pow(principal(z + 1.0), mu / 2.0) * std::pow(principal(z - 1.0), -mu / 2.0);
    return pre / std::tgamma(1.0 - mu) * hyp2f1(-nu, nu + 1.0, 1.0 - mu, (1.0 - z) / 2.0);
}

}  // namespace

cplx legendre_P(double nu, double mu, cplx z) {
    if (z.imag() == 0.0 && z.real() <= -1.0)
        throw Error(ErrorCode::BranchCutArgument, "Legendre function argument on (-inf, -1]");
    return legendre_P3(nu, mu, z);
}

cplx legendre_Q(double nu, double mu, cplx z) {
    if (z.imag() == 0.0 && z.real() <= (mu == 0.0 ? 1.0 : -1.0))
        throw Error(ErrorCode::BranchCutArgument, "Legendre Q argument on its cut");
    if (mu == 0.0) {
        // Q^0_nu(z) = sqrt(pi) Gamma(nu+1) / (2^{nu+1} Gamma(nu+3/2)) z^{-nu-1} 2F1((nu+2)/2, (nu+1)/2; nu+3/2; 1/z^2)
        double c = std::sqrt(pi) * std::tgamma(nu + 1.0) / (std::pow(2.0, nu + 1.0) * std::tgamma(nu + 1.5));
        return c * std::pow(principal(z), -nu - 1.0) *
               hyp2f1((nu + 2.0) / 2.0, (nu + 1.0) / 2.0, nu + 1.5, 1.0 / (z * z));
    }
    double ratio = std::tgamma(nu + mu + 1.0) / std::tgamma(nu - mu + 1.0);
    return pi * std::exp(I * pi * mu) / (2.0 * std::sin(pi * mu)) *
           (legendre_P3(nu, mu, z) - ratio * legendre_P3(nu, -mu, z));
}

}  // namespace tf
