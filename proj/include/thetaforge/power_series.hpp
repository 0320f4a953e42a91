#pragma once
// Exact integer recurrence tables and the power series built on them.

#include <boost/multiprecision/cpp_int.hpp>
#include <ostream>
#include <vector>

#include "thetaforge/core.hpp"

namespace tf {

using bigint = boost::multiprecision::cpp_int;

enum class TableKind { WeierstrassA, HalphenB, ThetaG, ThetaGab };

class IntegerTable2D {
public:
    IntegerTable2D(TableKind kind, int rows, int cols) : kind_(kind), rows_(rows), cols_(cols), v_(size_t(rows) * cols) {}
    // zero outside the stored range, including negative indices
    bigint at(int m, int n) const {
        if (m < 0 || n < 0 || m >= rows_ || n >= cols_) return 0;
        return v_[size_t(m) * cols_ + n];
    }
    void set(int m, int n, bigint x) { v_[size_t(m) * cols_ + n] = std::move(x); }
    double as_double(int m, int n) const { return at(m, n).convert_to<double>(); }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    TableKind kind() const { return kind_; }
    int epsilon = 0;           // HalphenB only
    int alpha = 0, beta = 0;   // ThetaGab only
    void write_csv(std::ostream& os) const;

private:
    TableKind kind_;
    int rows_, cols_;
    std::vector<bigint> v_;
};

// A_{m,n}; filled over the whole weight triangle 2m+3n <= 2 max_m + 3 max_n
IntegerTable2D table_A(int max_m, int max_n);
// B^{(eps)}_{m,n}, weight m+2n; every division by 3 is checked
IntegerTable2D table_B(int epsilon, int max_m, int max_n);
// G_{m,n} and G^{(alpha,beta)}_{m,n}, filled for m+n <= max_order
IntegerTable2D table_G(int max_order);
IntegerTable2D table_G_ab(int alpha, int beta, int max_order);

// sigma(z; g2, g3) through z^{2K+1}; grouping 11 sums over (m,n), grouping 14 over (k, nu)
cplx sigma_series(cplx z, cplx g2, cplx g3, int K);
cplx sigma_series_grouped(cplx z, cplx g2, cplx g3, int K);
// coefficient of z^{2k+1} in sigma
cplx sigma_coefficient(int k, cplx g2, cplx g3);

// Xi^{(eps)}(z; e, g2) through the k = K term; eps = 1 gives sigma_lambda, eps = 0 gives sigma
cplx xi_series(int epsilon, cplx z, cplx e, cplx g2, int K);
cplx sigma_lambda_series(int lambda, cplx z, cplx e_lambda, cplx g2, int K);

// Halphen PDE residuals (both lines) of the truncated Xi series, partials by central differences
std::pair<double, double> halphen_pde_residual(int epsilon, cplx z, cplx e, cplx g2, int K);

enum class SeriesRep { R42, R34, R32, AllChecked };

// C_k for theta[alpha;beta] about z = 0: odd series for theta_1 class, even otherwise.
// Coefficients include the characteristic's sign.
std::vector<cplx> theta_series_coeffs(ThetaCharacteristic ch, const ModularParameter& tau, int K,
                                      SeriesRep rep = SeriesRep::R42);
cplx theta_power_series(ThetaCharacteristic ch, cplx z, const ModularParameter& tau, int K = 24,
                        SeriesRep rep = SeriesRep::R42);
cplx theta1_prime_power_series(cplx z, const ModularParameter& tau, int K = 24, SeriesRep rep = SeriesRep::R42);

// d^k/dtau^k of the nullwert (eta^3 for the theta_1 class), k = 0..order_d
std::vector<cplx> series_tau_derivative(ThetaCharacteristic ch, const ModularParameter& tau, int K, int order_d);

}  // namespace tf
