#pragma once
// Shared types: complex scalars, error codes, evaluation options, modular parameter.

#include <array>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tf {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorCode {
    NonModularTau,
    SeriesNotConverged,
    RouteMismatch,
    DegenerateDiscriminant,
    RepresentationMismatch,
    ThetaOneVanishes,
    BadIndex,
    DegenerateHamiltonian,
    CNormalizationFailed,
    Degenerate,
    EquianharmonicBranch,
    BranchCutArgument,
    DegenerateModulus,
    PoleOfMap,
    LatticePoint,
    PoleOfRatio,
    DenominatorVanishes,
    BranchAmbiguity,
    ParseError,
    UnknownSuite,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& what)
        : std::runtime_error(std::string(error_name(c)) + ": " + what), code_(c) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// 200 unless THETA_FORGE_MAX_TERMS is set; read once per process
int default_max_terms();

struct EvalOptions {
    double rel_tol = 1e-17;
    int max_terms = default_max_terms();
};

// tau in the upper half plane, nome q = exp(i pi tau) cached
struct ModularParameter {
    cplx tau;
    cplx nome;
    ModularParameter(cplx t);  // NOLINT: implicit on purpose, tau literals everywhere
    ModularParameter(double re, double im) : ModularParameter(cplx(re, im)) {}
};

struct ThetaCharacteristic {
    long alpha = 0;
    long beta = 0;
    bool operator==(const ThetaCharacteristic&) const = default;
};

// i^n for any integer n, exact
cplx ipow(long n);

}  // namespace tf
