#pragma once
// Small numeric helpers: truncated Taylor jets, central differences, ordered sample maps.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "thetaforge/core.hpp"

namespace tf {

// Truncated Taylor series c[0] + c[1] t + ... + c[N-1] t^{N-1}.
// Used for termwise-exact derivative checks of scalar ODEs.
template <int N>
struct Jet {
    std::array<cplx, N> c{};

    Jet() = default;
    Jet(cplx v) { c[0] = v; }  // NOLINT

    // from derivatives f, f', f'', ...
    static Jet from_derivs(const std::array<cplx, N>& d) {
        Jet j;
        double f = 1.0;
        for (int k = 0; k < N; ++k) {
            if (k > 0) f *= k;
            j.c[k] = d[k] / f;
        }
        return j;
    }
    cplx deriv(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return c[k] * f;
    }
    // d/dt of the jet, losing the top coefficient
    Jet diff() const {
        Jet r;
        for (int k = 0; k + 1 < N; ++k) r.c[k] = c[k + 1] * double(k + 1);
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r;
        for (int k = 0; k < N; ++k) r.c[k] = a.c[k] + b.c[k];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r;
        for (int k = 0; k < N; ++k) r.c[k] = a.c[k] - b.c[k];
        return r;
    }
    friend Jet operator-(const Jet& a) {
        Jet r;
        for (int k = 0; k < N; ++k) r.c[k] = -a.c[k];
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int k = 0; k < N; ++k)
            for (int i = 0; i <= k; ++i) r.c[k] += a.c[i] * b.c[k - i];
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        Jet r;
        for (int k = 0; k < N; ++k) {
            cplx s = a.c[k];
            for (int i = 1; i <= k; ++i) s -= b.c[i] * r.c[k - i];
            r.c[k] = s / b.c[0];
        }
        return r;
    }
};

template <int N>
Jet<N> jlog(const Jet<N>& f) {
    // (log f)' = f'/f
    Jet<N> q = f.diff() / f;
    Jet<N> r;
    r.c[0] = std::log(f.c[0]);
    for (int k = 1; k < N; ++k) r.c[k] = q.c[k - 1] / double(k);
    return r;
}

template <int N>
Jet<N> jpow(const Jet<N>& f, int n) {
    Jet<N> r(1.0);
    Jet<N> b = f;
    bool neg = n < 0;
    unsigned e = neg ? unsigned(-n) : unsigned(n);
    while (e) {
        if (e & 1u) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return neg ? Jet<N>(1.0) / r : r;
}

// f(g(t)) for f given by Taylor coefficients around g(0)
template <int N>
Jet<N> jcompose(const std::array<cplx, N>& f, const Jet<N>& g) {
    Jet<N> d = g;
    d.c[0] = 0.0;
    Jet<N> r(f[N - 1]);
    for (int k = N - 2; k >= 0; --k) r = r * d + Jet<N>(f[k]);
    return r;
}

// 5-point central first derivative, O(h^4)
template <class F>
auto fd1(F&& f, cplx x, double h) {
    auto a = f(x + 2.0 * h), b = f(x + h), c = f(x - h), d = f(x - 2.0 * h);
    return (-a + 8.0 * b - 8.0 * c + d) / (12.0 * h);
}

// 5-point central second derivative, O(h^4)
template <class F>
auto fd2(F&& f, cplx x, double h) {
    auto a = f(x + 2.0 * h), b = f(x + h), m = f(x), c = f(x - h), d = f(x - 2.0 * h);
    return (-a + 16.0 * b - 30.0 * m + 16.0 * c - d) / (12.0 * h * h);
}

// one Richardson step on fd1: error O(h^6)
template <class F>
auto fd1r(F&& f, cplx x, double h) {
    auto a = fd1(f, x, h), b = fd1(f, x, 2.0 * h);
    return (64.0 * a - b) / 63.0;
}

// Dormand-Prince 5(4) along the straight complex path t0 + s dir, s in [0, length].
// Only short arcs are integrated, so a plain step-size controller is enough.
template <class F>
std::vector<cplx> rk45_path(F&& f, std::vector<cplx> y, cplx t0, cplx dir, double length, double rtol = 1e-10) {
    static const double c[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1, 1};
    static const double a[7][6] = {{},
                                   {1.0 / 5},
                                   {3.0 / 40, 9.0 / 40},
                                   {44.0 / 45, -56.0 / 15, 32.0 / 9},
                                   {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
                                   {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
                                   {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static const double b5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
    static const double b4[7] = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200, 187.0 / 2100,
                                 1.0 / 40};
    const std::size_t n = y.size();
    double s = 0.0, h = length / 20.0;
    std::vector<std::vector<cplx>> k(7, std::vector<cplx>(n));
    std::vector<cplx> tmp(n), y5(n);
    for (int guard = 0; s < length && guard < 100000; ++guard) {
        h = std::min(h, length - s);
        for (int st = 0; st < 7; ++st) {
            for (std::size_t i = 0; i < n; ++i) {
                cplx acc = y[i];
                for (int j = 0; j < st; ++j) acc += h * a[st][j] * k[j][i];
                tmp[i] = acc;
            }
            std::vector<cplx> d = f(t0 + (s + c[st] * h) * dir, tmp);
            for (std::size_t i = 0; i < n; ++i) k[st][i] = d[i] * dir;
        }
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx v5 = y[i], v4 = y[i];
            for (int st = 0; st < 7; ++st) {
                v5 += h * b5[st] * k[st][i];
                v4 += h * b4[st] * k[st][i];
            }
            y5[i] = v5;
            err = std::max(err, std::abs(v5 - v4) / (rtol * (std::abs(v5) + 1e-12)));
        }
        if (err <= 1.0) {
            s += h;
            y = y5;
        }
        h *= std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    }
    return y;
}

// Map over samples, results ordered by input index. The serial path is the reference.
template <class T, class R>
std::vector<R> sample_map_serial(const std::vector<T>& in, const std::function<R(const T&)>& f) {
    std::vector<R> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
    return out;
}

template <class T, class R>
std::vector<R> sample_map(const std::vector<T>& in, const std::function<R(const T&)>& f) {
    std::vector<R> out(in.size());
    const long n = static_cast<long>(in.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) out[i] = f(in[i]);
    return out;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace tf
