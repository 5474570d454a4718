#pragma once

// Discrete moments of zeta' over zeros and the numerical checks built on
// them: the Hölder inequality, the Landau-Gonek sum, the two main terms of
// the mollified second moment, the zero-count residual and a mean-value
// diagnostic. Every sum over zeros is reduced by a pairwise tree in index
// order so results do not depend on the number of workers.

#include "zetamoments/arithmetic.hpp"
#include "zetamoments/dirichlet_poly.hpp"
#include "zetamoments/mollifier.hpp"
#include "zetamoments/real.hpp"
#include "zetamoments/zeta.hpp"

#include <map>
#include <string>
#include <vector>

namespace zm {

/// Thrown when a negative moment meets a zero whose derivative is at or
/// below kSimpleZeroFloor.
class SimpleZeroError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Zeros known to cover (t_lo, t_hi] completely.
struct ZeroSet {
    Real t_lo;
    Real t_hi;
    std::vector<ZetaZero> zeros;

    Precision precision() const;
    /// The zeros with ordinate in (lo, hi]; throws if the window is not covered.
    ZeroSet window(const Real& lo, const Real& hi) const;
    Real length() const { return t_hi - t_lo; }
};

enum class Status { pass, fail, inconclusive };
const char* status_name(Status s);

/// Sum of terms by a balanced binary tree in index order.
Real pairwise_sum(std::vector<Real> terms, Precision prec);
Complex pairwise_sum(std::vector<Complex> terms, Precision prec);

struct MomentReport {
    Real k;
    Real t_lo, t_hi;
    long zero_count = 0;
    Real J_value;
    Real normalized;  // J / (T (log T)^{(k+1)^2}) with T = t_hi
    std::map<std::string, Real> reference_constants;
};

MomentReport compute_Jk(const ZeroSet& zs, const Real& k, unsigned threads = 1);

struct HolderReport {
    Real k;
    long zero_count = 0;
    Real lhs, rhs, slack, tolerance;
    Real conjugate_deviation;  // max |N(rho)N(1-rho) - |N(rho)|^2|
    Status status = Status::fail;
};

/// Both sides of sum |N|^2 <= (sum |zeta'|^2 |N|^{2(1-1/k)})^{-k/(1-k)} (sum |zeta'|^{2k})^{1/(1-k)}
/// with N = N(rho, alpha) for alpha = k. Tolerance is 10^{-prec/4}.
HolderReport verify_holder(const ZeroSet& zs, const Real& k, const MollifierSchedule& sched, const PrimeTable& table,
                           unsigned threads = 1);
/// Same check with an arbitrary mollifier value per zero.
HolderReport holder_from_values(const ZeroSet& zs, const Real& k, const std::vector<Complex>& N_rho,
                                const std::vector<Complex>& N_conj, unsigned threads = 1);

struct LandauReport {
    long a = 1, b = 1;
    Real t_lo, t_hi;
    long zero_count = 0;
    Complex empirical;
    Complex main_term;
    Real error_budget;  // C sqrt(ab) (log t_hi)^2
    double budget_constant = 5.0;
    Real deviation;     // |empirical - main_term|
    bool within_budget() const { return deviation <= error_budget; }
};

/// sum over zeros of (a/b)^{i gamma} against -(W/2 pi) Lambda(a/b)/sqrt(a/b)
/// (or the count when a = b), W = t_hi - t_lo.
LandauReport landau_gonek(const ZeroSet& zs, long a, long b, unsigned threads = 1, double budget_constant = 5.0);

/// sum_n (Lambda * a)(n) a(n) / n as an exact combination of logarithms.
LogLinear<Rational> convolution_pairing(const RationalPoly& a);
/// sum_n a(n)^2 / n, exact.
Rational square_sum(const RationalPoly& a);
/// prod_j sum_{n_j} k^{2 Omega(n_j)} g(n_j)^2 b_j(n_j) / n_j, exact.
Rational block_product_formula(const MollifierSchedule& sched, const PrimeTable& table, const Rational& k);

struct Prop4Report {
    Real k;
    long zero_count = 0;
    Real lhs;            // Re sum N(rho,k) N(1-rho,k)
    Real lhs_imag;
    Real main1;          // N(T) sum a_k(n)^2 / n
    Real main2;          // (T/pi) sum (Lambda*a_k)(n) a_k(n) / n
    Rational square_sum_exact;
    std::size_t support_size = 0;
};

Prop4Report prop4_sides(const ZeroSet& zs, const MollifierSchedule& sched, const PrimeTable& table, const Real& k,
                        unsigned threads = 1);

/// N(T) - (T/2 pi) log(T/(2 pi e)).
Real rvm_residual(const Real& T, const EvalConfig& cfg);

struct MeanValueReport {
    long m = 1;
    Real lhs, rhs_main, ratio;
};

/// sum over zeros of |sum_p a(p) p^{i gamma}/sqrt p|^{2m} against
/// W (log W) m! (sum a(p)/p)^m + (log W)^2 (sum a(p))^{2m}, W = t_hi - t_lo.
MeanValueReport mean_value_diagnostic(const ZeroSet& zs, const std::map<u64, Real>& a, long m, unsigned threads = 1);

/// Least-squares slope of log(J_k/T) against log log T; needs >= 3 reports
/// with increasing T.
double fit_moment_exponent(const std::vector<MomentReport>& reports);

}  // namespace zm
