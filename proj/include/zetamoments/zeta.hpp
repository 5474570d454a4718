#pragma once

// Evaluation of zeta(s) and zeta'(s) by Euler-Maclaurin summation, the
// Riemann-Siegel theta function, zero counting through the argument
// principle and isolation/refinement of zeros on the critical line.

#include "zetamoments/arithmetic.hpp"
#include "zetamoments/real.hpp"

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace zm {

struct EvalConfig {
    Precision prec_bits = kDefaultPrecision;
    unsigned euler_maclaurin_terms = 64;
    double cutoff_multiplier = 1.0;

    /// Throws DomainError unless prec_bits >= 64 and euler_maclaurin_terms >= 4.
    void validate() const;
};

/// Extra bits carried internally on top of EvalConfig::prec_bits.
inline constexpr Precision kGuardBits = 32;
/// Largest |Im s| the engine accepts.
inline constexpr double kMaxHeight = 1e5;
/// Zeros with |zeta'(rho)| at or below this are treated as possibly multiple.
inline constexpr double kSimpleZeroFloor = 1e-6;

class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class AmbiguousCountError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IncompleteEnumerationError : public std::runtime_error {
public:
    IncompleteEnumerationError(double lo, double hi, long expected, long found);
    double lo, hi;
    long expected, found;
};

struct ZetaZero {
    long index = 0;
    Real gamma;
    Real gamma_error;
    Complex zeta_prime;
    Precision prec_bits = kDefaultPrecision;
};

struct ZetaValues {
    Complex value;
    Complex derivative;
};

Complex zeta(const Complex& s, const EvalConfig& cfg);
Complex zeta_prime(const Complex& s, const EvalConfig& cfg);
/// Both values from one pass over the same expansion.
ZetaValues zeta_with_derivative(const Complex& s, const EvalConfig& cfg);

/// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi. Throws RangeError for t < 1.
Real riemann_siegel_theta(const Real& t, const EvalConfig& cfg);
/// Z(t) = e^{i theta(t)} zeta(1/2 + it), real for real t.
Real hardy_z(const Real& t, const EvalConfig& cfg);

/// N(T), the number of zeros with 0 < Im rho <= T. Requires T >= 5.
/// Throws AmbiguousCountError when T sits too close to an ordinate.
long count_zeros(const Real& T, const EvalConfig& cfg);
long count_zeros(double T, const EvalConfig& cfg);

/// All zeros with ordinate in (t_lo, t_hi], ascending, refined and
/// certified. The result does not depend on `threads`.
std::vector<ZetaZero> find_zeros(const Real& t_lo, const Real& t_hi, const EvalConfig& cfg, unsigned threads = 1);
std::vector<ZetaZero> find_zeros(double t_lo, double t_hi, const EvalConfig& cfg, unsigned threads = 1);

/// Bernoulli number B_{2j} (exact), cached.
const Rational& bernoulli_even(unsigned j);

namespace fast {
// Double precision versions used for bracketing and argument tracking.
std::complex<double> zeta(double sigma, double t);
double theta(double t);
double hardy_z(double t);
}  // namespace fast

}  // namespace zm
