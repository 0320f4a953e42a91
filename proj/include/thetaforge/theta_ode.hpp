#pragma once
// Differential systems for theta functions and their constants: z- and tau-fields for
// (theta1..theta4, theta1'), the constants' systems, algebraic integrals, the scalar
// third-order equations, Darboux-Halphen, renormalized fields and the general solutions.

#include <array>
#include <map>
#include <string>

#include "thetaforge/core.hpp"
#include "thetaforge/modular.hpp"

namespace tf {

struct ThetaState {
    cplx t1, t2, t3, t4, t1p;
    cplx& operator[](int i) { return (&t1)[i]; }  // 0..4 in field order
    const cplx& operator[](int i) const { return (&t1)[i]; }
    cplx theta(int k) const { return (&t1)[k - 1]; }
};

struct CoefficientState {
    cplx v2, v3, v4, eta;
    cplx& operator[](int i) { return (&v2)[i]; }
    const cplx& operator[](int i) const { return (&v2)[i]; }
    cplx nullwert(int k) const { return k == 1 ? cplx(0.0) : (&v2)[k - 2]; }
};

struct NoncanonicalIntegrals {
    cplx A4 = 1.0, B4 = 1.0, Afrak4 = 1.0;
};

struct DHTriple {
    cplx X, Y, Z;
};

struct SolutionConstants {
    cplx Acap = 0.0, Bcap = 0.0, Ccap = 1.0, Dcap = 0.0, Ecap = 0.0;
    cplx kappa = 1.0;
    cplx base_tau{0.0, 1.0};
    UnimodularMatrix matrix;
    cplx d_const = 1.0;
};

// (k, nu, mu) in {(2,3,4), (3,4,2), (4,2,3)}
std::pair<int, int> index_triple(int k);

ThetaState canonical_state(cplx z, const ModularParameter& tau, const EvalOptions& opts = {});
CoefficientState canonical_coefficients(const ModularParameter& tau, const EvalOptions& opts = {});

// eta + pi^2/12 (v3^4 + v4^4), a quarter of the renormalization parameter
cplx quarter_lambda(const CoefficientState& c);

ThetaState z_field(const ThetaState& s, const CoefficientState& c);
ThetaState tau_field(const ThetaState& s, const CoefficientState& c);
// the theta2 line written through the quadratic identities; equals tau_field(...).t2 on canonical data
cplx tau_field_theta2_alt(const ThetaState& s, const CoefficientState& c);

// theta[alpha;beta] read off a state / nullwert off coefficients via the dictionary
cplx state_char(const ThetaState& s, ThetaCharacteristic ch);
cplx coeff_char(const CoefficientState& c, ThetaCharacteristic ch);
// d/dz and d/dtau of theta[alpha;beta] in the (alpha,beta)-representation
cplx char_z_field(ThetaCharacteristic ch, const ThetaState& s, const CoefficientState& c);
cplx char_tau_field(ThetaCharacteristic ch, const ThetaState& s, const CoefficientState& c);

// symmetric system for (v2, v3, v4, eta)
CoefficientState constants_field_canonical(const CoefficientState& c);
// (alpha,beta) form: d/dtau of theta[alpha;beta](0) and of eta; (alpha,beta) != (0,0)
std::pair<cplx, cplx> constants_field_ab(int alpha, int beta, const CoefficientState& c);
// compatibility system with integrals A^4, B^4 as parameters
CoefficientState constants_field_noncanonical(const CoefficientState& c, cplx A4, cplx B4);
// rules at A = B = 1 in the (alpha,beta) and k forms
cplx integrable_rule_ab(int alpha, int beta, const CoefficientState& c);
cplx integrable_rule_k(int k, const CoefficientState& c);

NoncanonicalIntegrals algebraic_integrals(const ThetaState& s, const CoefficientState& c);

struct ScalarResidual {
    cplx value;    // raw residual
    double scale;  // size of the largest term
    double rel() const { return std::abs(value) / scale; }
};
// Jacobi's third-order equation, the log-derivative equation, Chazy, the theta-function
// equations in z and the P and theta1/theta4 equations, all with termwise series derivatives
std::map<std::string, ScalarResidual> scalar_equation_residuals(const ModularParameter& tau, cplx z = cplx(0.2, 0.05),
                                                                const EvalOptions& opts = {});
// the same equations for the Gamma(1)-transformed nullwert theta[alpha;beta](M tau)/sqrt(c tau + d)
// and the transformed eta
std::map<std::string, ScalarResidual> transformed_solution_residuals(const UnimodularMatrix& M, ThetaCharacteristic ch,
                                                                     const ModularParameter& tau,
                                                                     const EvalOptions& opts = {});

// X, Y, Z = 2 d/dt log(v2, v3, v4), d/dt = 4 pi i d/dtau
DHTriple darboux_halphen(const CoefficientState& c);
// residuals of the DH system and of the single third-order equation for X, from series at tau
std::map<std::string, ScalarResidual> darboux_halphen_residuals(const ModularParameter& tau,
                                                                const EvalOptions& opts = {});

struct RenormalizedFields {
    ThetaState bold;     // (bold theta1, bold theta2, bold theta3, bold theta4, bold theta1')
    ThetaState dz;       // z-derivatives
    ThetaState dt;       // t-derivatives, tau = 4 pi i t
    cplx Lambda;
    std::array<cplx, 3> log_dt;  // d/dt log v2, v3, v4
    // compatibility relations; each entry should vanish
    std::array<cplx, 3> compat;
};
// log_dt and the Lambda-derivative are taken from the compatible constants' system with
// the integrals read off the state
RenormalizedFields renormalized_fields(const ThetaState& s, const CoefficientState& c);
cplx renormalized_lambda_relation(const CoefficientState& c, const NoncanonicalIntegrals& in);

// general solution with matrix (a, b, c, delta), constants A, B, C, D, E, d
std::pair<ThetaState, CoefficientState> noncanonical_solution(const SolutionConstants& k, cplx z, cplx tau,
                                                              const EvalOptions& opts = {});
// z-solution for fixed coefficients: constants A, B, C, kappa and the internal modulus base_tau
ThetaState complete_z_solution(const SolutionConstants& k, const CoefficientState& c, cplx z,
                               const EvalOptions& opts = {});
// C e^{pi i A(2z + A tau)} theta(z + A tau + B | tau)
ThetaState linear_exponential_solution(cplx A, cplx B, cplx C, cplx z, const ModularParameter& tau,
                                       const EvalOptions& opts = {});
// flip the signs of a pair; index 1 flips (theta1, theta1') together
ThetaState flip_pair(const ThetaState& s, int j, int k);

struct GradientFlowResult {
    double residual;         // max |Omega grad H - field|
    double antisymmetry;     // max |Omega + Omega^T|
    double det;              // |det Omega|
    cplx H;
};
GradientFlowResult gradient_flow_check(const CoefficientState& c, const NoncanonicalIntegrals& in);

struct ModulusResult {
    cplx J;
    ModularParameter tau;
};
ModulusResult modulus_from_integrals(const CoefficientState& c, const NoncanonicalIntegrals& in,
                                     const EvalOptions& opts = {});

// the quadratic identities theta_mu^2 ... as residuals (three entries, canonical data -> 0)
std::array<cplx, 3> quadratic_identity_residuals(const ThetaState& s, const CoefficientState& c);

}  // namespace tf
