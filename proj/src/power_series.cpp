#include "thetaforge/power_series.hpp"

#include <cmath>
#include <stdexcept>

#include "thetaforge/constants.hpp"
#include "thetaforge/numeric.hpp"
#include "thetaforge/theta_core.hpp"

namespace tf {

void IntegerTable2D::write_csv(std::ostream& os) const {
    os << "m,n,value\n";
    for (int m = 0; m < rows_; ++m)
        for (int n = 0; n < cols_; ++n) os << m << ',' << n << ',' << at(m, n) << '\n';
}

namespace {

bigint exact_div3(const bigint& x) {
    if (x % 3 != 0) throw std::logic_error("recurrence produced a non-integral entry");
    return x / 3;
}

double factorial(int n) {
    static const std::vector<double> tab = [] {
        std::vector<double> t(171, 1.0);
        for (int i = 1; i < 171; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    if (n < 0 || n > 170) throw std::out_of_range("factorial argument");
    return tab[n];
}

// Cached tables: built once, read-only afterwards.
constexpr int kCacheWeight = 96;

const IntegerTable2D& cached_A() {
    static const IntegerTable2D t = table_A(kCacheWeight / 2, 0);
    return t;
}
const IntegerTable2D& cached_B(int eps) {
    static const IntegerTable2D t0 = table_B(0, kCacheWeight / 2, 0);
    static const IntegerTable2D t1 = table_B(1, kCacheWeight / 2, 0);
    return eps ? t1 : t0;
}
const IntegerTable2D& cached_G() {
    static const IntegerTable2D t = table_G(kCacheWeight / 2);
    return t;
}
const IntegerTable2D& cached_G_ab(int a, int b) {
    static const IntegerTable2D t10 = table_G_ab(1, 0, kCacheWeight / 2);
    static const IntegerTable2D t00 = table_G_ab(0, 0, kCacheWeight / 2);
    static const IntegerTable2D t01 = table_G_ab(0, 1, kCacheWeight / 2);
    if (a == 1 && b == 0) return t10;
    if (a == 0 && b == 0) return t00;
    if (a == 0 && b == 1) return t01;
    throw Error(ErrorCode::BadIndex, "G^(a,b) table needs an even characteristic");
}

}  // namespace

IntegerTable2D table_A(int max_m, int max_n) {
    const int W = 2 * max_m + 3 * max_n;
    IntegerTable2D t(TableKind::WeierstrassA, W / 2 + 2, W / 3 + 2);
    t.set(0, 0, 1);
    for (int w = 1; w <= W; ++w)
        for (int n = 0; 3 * n <= w; ++n) {
            if ((w - 3 * n) % 2) continue;
            int m = (w - 3 * n) / 2;
            bigint s = 16 * bigint(n + 1) * t.at(m - 2, n + 1) + 9 * bigint(m + 1) * t.at(m + 1, n - 1) -
                       bigint(2 * m + 3 * n - 1) * bigint(4 * m + 6 * n - 1) * t.at(m - 1, n);
            t.set(m, n, exact_div3(s));
        }
    return t;
}

IntegerTable2D table_B(int eps, int max_m, int max_n) {
    if (eps != 0 && eps != 1) throw Error(ErrorCode::BadIndex, "epsilon must be 0 or 1");
    const int W = max_m + 2 * max_n;
    IntegerTable2D t(TableKind::HalphenB, W + 2, W / 2 + 2);
    t.epsilon = eps;
    t.set(0, 0, 1);
    for (int w = 1; w <= W; ++w)
        for (int n = 0; 2 * n <= w; ++n) {
            int m = w - 2 * n;
            // three times the recurrence, then an exact division
            bigint s = 72 * bigint(n + 1) * t.at(m - 3, n + 1) + 3 * bigint(4 * m - 12 * n - 4 - eps) * t.at(m - 1, n) -
                       4 * bigint(m + 1) * t.at(m + 1, n - 1) -
                       bigint(m + 2 * n - 1) * bigint(2 * m + 4 * n - 1 - 2 * eps) * t.at(m, n - 1);
            t.set(m, n, exact_div3(s));
        }
    return t;
}

IntegerTable2D table_G(int N) {
    IntegerTable2D t(TableKind::ThetaG, N + 1, N + 1);
    t.set(0, 0, 1);
    for (int w = 1; w <= N; ++w)
        for (int m = 0; m <= w; ++m) {
            int n = w - m;
            bigint s = 4 * bigint(n - 2 * m - 1) * t.at(m, n - 1) - 4 * bigint(m - 2 * n - 1) * t.at(m - 1, n) -
                       2 * bigint(m + n - 1) * bigint(2 * m + 2 * n - 1) *
                           (t.at(m - 2, n) + t.at(m - 1, n - 1) + t.at(m, n - 2));
            t.set(m, n, s);
        }
    return t;
}

IntegerTable2D table_G_ab(int alpha, int beta, int N) {
    IntegerTable2D t(TableKind::ThetaGab, N + 1, N + 1);
    t.alpha = alpha;
    t.beta = beta;
    const int sa = ang(alpha), sb = ang(beta), sab = ang(alpha + beta);
    t.set(0, 0, 1);
    for (int w = 1; w <= N; ++w)
        for (int m = 0; m <= w; ++m) {
            int n = w - m;
            bigint s = sa * bigint(4 * n - 8 * m - 3) * t.at(m, n - 1) - sb * bigint(4 * m - 8 * n - 3) * t.at(m - 1, n) -
                       2 * bigint(m + n - 1) * bigint(2 * m + 2 * n - 3) *
                           (t.at(m - 2, n) + sab * t.at(m - 1, n - 1) + t.at(m, n - 2));
            t.set(m, n, s);
        }
    return t;
}

cplx sigma_coefficient(int k, cplx g2, cplx g3) {
    const IntegerTable2D& A = (2 * k <= kCacheWeight) ? cached_A() : table_A(k / 2 + 1, 0);
    cplx c = 0.0;
    for (int nu = (k + 2) / 3; 2 * nu <= k; ++nu) {
        int m = 3 * nu - k, n = k - 2 * nu;
        c += std::ldexp(A.as_double(m, n), 2 * k - 5 * nu) * std::pow(g2, m) * std::pow(g3, n);
    }
    return c / factorial(2 * k + 1);
}

cplx sigma_series_grouped(cplx z, cplx g2, cplx g3, int K) {
    cplx s = 0.0;
    for (int k = K; k >= 0; --k) s = s * z * z + sigma_coefficient(k, g2, g3);
    return s * z;
}

cplx sigma_series(cplx z, cplx g2, cplx g3, int K) {
    const IntegerTable2D& A = (2 * K <= kCacheWeight) ? cached_A() : table_A(K / 2 + 1, 0);
    cplx s = 0.0;
    for (int n = 0; 3 * n <= K; ++n)
        for (int m = 0; 2 * m + 3 * n <= K; ++m) {
            int p = 4 * m + 6 * n + 1;
            s += A.as_double(m, n) * std::pow(g2 / 2.0, m) * std::pow(2.0 * g3, n) * std::pow(z, p) / factorial(p);
        }
    return s;
}

cplx xi_series(int eps, cplx z, cplx e, cplx g2, int K) {
    const IntegerTable2D& B = (K <= kCacheWeight / 2) ? cached_B(eps) : table_B(eps, K, 0);
    cplx s = 0.0;
    for (int k = 0; k <= K; ++k) {
        cplx c = 0.0;
        for (int nu = 0; 2 * nu <= k; ++nu)
            c += std::ldexp(B.as_double(k - 2 * nu, nu), -nu) * std::pow(e, k - 2 * nu) * std::pow(g2, nu);
        int p = 2 * k + 1 - eps;
        s += c * std::pow(z, p) / factorial(p);
    }
    return s;
}

cplx sigma_lambda_series(int lambda, cplx z, cplx e_lambda, cplx g2, int K) {
    if (lambda < 1 || lambda > 3) throw Error(ErrorCode::BadIndex, "lambda must be 1..3");
    return xi_series(1, z, e_lambda, g2, K);
}

std::pair<double, double> halphen_pde_residual(int eps, cplx z, cplx e, cplx g2, int K) {
    auto X = [&](cplx zz, cplx ee, cplx gg) { return xi_series(eps, zz, ee, gg, K); };
    const double h = 1e-6;
    cplx f = X(z, e, g2);
    cplx fz = fd1([&](cplx s) { return X(s, e, g2); }, z, h);
    cplx fzz = fd2([&](cplx s) { return X(s, e, g2); }, z, 1e-3);
    cplx fe = fd1([&](cplx s) { return X(z, s, g2); }, e, h);
    cplx fg = fd1([&](cplx s) { return X(z, e, s); }, g2, h);
    cplx t1[] = {z * fz, -2.0 * e * fe, -4.0 * g2 * fg, -(1.0 - eps) * f};
    cplx t2[] = {fzz, -(4.0 * e * e - 2.0 / 3.0 * g2) * fe, -12.0 * (4.0 * e * e * e - g2 * e) * fg,
                 (double(eps) * e + g2 * z * z / 12.0) * f};
    auto rel = [](const cplx* t, int n) {
        cplx s = 0.0;
        double sc = 0.0;
        for (int i = 0; i < n; ++i) {
            s += t[i];
            sc += std::abs(t[i]);
        }
        return std::abs(s) / std::max(sc, 1e-300);
    };
    return {rel(t1, 4), rel(t2, 4)};
}

namespace {

// N_nu for the theta_1 class in one of the three theta-constant representations
std::vector<std::pair<cplx, double>> n_odd(const NullwerteQuadruple& v, int K, SeriesRep rep) {
    const IntegerTable2D& G = (K <= kCacheWeight / 2) ? cached_G() : table_G(K);
    cplx p2 = std::pow(v.v2, 4), p3 = std::pow(v.v3, 4), p4 = std::pow(v.v4, 4);
    std::vector<std::pair<cplx, double>> out;
    for (int nu = 0; nu <= K; ++nu) {
        cplx s = 0.0;
        double sc = 0.0;
        for (int j = 0; j <= nu; ++j) {
            cplx t;
            switch (rep) {
                case SeriesRep::R34:
                    t = double(ang(j)) * G.as_double(nu - j, j) * std::pow(p3, j) * std::pow(p4, nu - j);
                    break;
                case SeriesRep::R32:
                    t = double(ang(j)) * G.as_double(j, nu - j) * std::pow(p3, j) * std::pow(p2, nu - j);
                    break;
                default:
                    t = G.as_double(nu - j, j) * std::pow(p4, j) * std::pow(p2, nu - j);
            }
            s += t;
            sc += std::abs(t);
        }
        out.push_back({s, sc});
    }
    return out;
}

struct CoeffSet {
    std::vector<cplx> c;
    std::vector<double> scale;
};

// (-2)^k sum_nu (-pi^2/6)^nu eta^{k-nu} N_nu / ((k-nu)! (2nu+d)!)
// i.e. the e^{-2 eta z^2} factor times the sigma-type series; no binomial weight
CoeffSet combine(const std::vector<std::pair<cplx, double>>& N, cplx eta, cplx pref, int K, int d) {
    CoeffSet r;
    const double c6 = -pi * pi / 6.0;
    for (int k = 0; k <= K; ++k) {
        cplx s = 0.0;
        double sc = 0.0;
        for (int nu = 0; nu <= k; ++nu) {
            double w = std::pow(c6, nu) / (factorial(k - nu) * factorial(2 * nu + d));
            cplx t = w * std::pow(eta, k - nu) * N[nu].first;
            s += t;
            sc += std::abs(w) * std::pow(std::abs(eta), k - nu) * N[nu].second;
        }
        double p = std::pow(-2.0, k);
        r.c.push_back(pref * p * s);
        r.scale.push_back(std::abs(pref) * std::abs(p) * sc);
    }
    return r;
}

}  // namespace

std::vector<cplx> theta_series_coeffs(ThetaCharacteristic ch, const ModularParameter& tau, int K, SeriesRep rep) {
    if (K < 0) throw Error(ErrorCode::BadIndex, "negative series order");
    auto [red, sgn] = char_reduce(ch);
    NullwerteQuadruple v = nullwerte(tau);
    cplx eta = weierstrass_eta(tau);
    if (red.alpha == 1 && red.beta == 1) {
        // theta[1;1] = -theta_1
        cplx e3 = std::pow(dedekind_eta(tau), 3);
        cplx pref = -double(sgn) * 2.0 * pi * e3;
        if (rep != SeriesRep::AllChecked) return combine(n_odd(v, K, rep), eta, pref, K, 1).c;
        CoeffSet a = combine(n_odd(v, K, SeriesRep::R42), eta, pref, K, 1);
        CoeffSet b = combine(n_odd(v, K, SeriesRep::R34), eta, pref, K, 1);
        CoeffSet c = combine(n_odd(v, K, SeriesRep::R32), eta, pref, K, 1);
        for (int k = 0; k <= K; ++k) {
            double sc = std::max({a.scale[k], b.scale[k], c.scale[k]});
            if (std::abs(a.c[k] - b.c[k]) > 1e-11 * sc || std::abs(a.c[k] - c.c[k]) > 1e-11 * sc)
                throw Error(ErrorCode::RepresentationMismatch, "theta-constant representations disagree");
        }
        return a.c;
    }
    // proper representation for the even functions
    const IntegerTable2D& G =
        (K <= kCacheWeight / 2) ? cached_G_ab(int(red.alpha), int(red.beta)) : table_G_ab(int(red.alpha), int(red.beta), K);
    cplx X = std::pow(nullwert_ab(int(red.alpha) + 1, 0, v), 4);
    cplx Y = std::pow(nullwert_ab(0, int(red.beta) + 1, v), 4);
    std::vector<std::pair<cplx, double>> N;
    for (int nu = 0; nu <= K; ++nu) {
        cplx s = 0.0;
        double sc = 0.0;
        for (int j = 0; j <= nu; ++j) {
            cplx t = G.as_double(j, nu - j) * std::pow(X, j) * std::pow(Y, nu - j);
            s += t;
            sc += std::abs(t);
        }
        N.push_back({s, sc});
    }
    cplx pref = double(sgn) * nullwert_ab(int(red.alpha), int(red.beta), v);
    return combine(N, eta, pref, K, 0).c;
}

cplx theta_power_series(ThetaCharacteristic ch, cplx z, const ModularParameter& tau, int K, SeriesRep rep) {
    std::vector<cplx> c = theta_series_coeffs(ch, tau, K, rep);
    auto [red, s] = char_reduce(ch);
    (void)s;
    cplx acc = 0.0, z2 = z * z;
    for (int k = K; k >= 0; --k) acc = acc * z2 + c[k];
    return (red.alpha == 1 && red.beta == 1) ? acc * z : acc;
}

cplx theta1_prime_power_series(cplx z, const ModularParameter& tau, int K, SeriesRep rep) {
    std::vector<cplx> c = theta_series_coeffs({1, 1}, tau, K, rep);
    cplx acc = 0.0, z2 = z * z;
    for (int k = K; k >= 0; --k) acc = acc * z2 - double(2 * k + 1) * c[k];
    return acc;
}

std::vector<cplx> series_tau_derivative(ThetaCharacteristic ch, const ModularParameter& tau, int K, int order_d) {
    if (order_d > K || order_d < 0) throw Error(ErrorCode::BadIndex, "order_d must lie in [0, K]");
    std::vector<cplx> c = theta_series_coeffs(ch, tau, K);
    auto [red, sgn] = char_reduce(ch);
    const bool odd = red.alpha == 1 && red.beta == 1;
    std::vector<cplx> out;
    for (int k = 0; k <= order_d; ++k) {
        cplx f = std::pow(4.0 * pi * I, k);
        if (odd)
            out.push_back(-double(sgn) * factorial(2 * k + 1) * c[k] / (2.0 * pi * f));
        else
            out.push_back(factorial(2 * k) * c[k] / f);
    }
    return out;
}

}  // namespace tf
