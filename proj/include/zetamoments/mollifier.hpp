#pragma once

// The block schedule alpha_j, ell_j, I_j, the mollifier N(s, alpha) as a
// product of truncated exponentials of prime sums, its coefficient law, and
// the prime sums and classifiers used to split zeros by size of those sums.

#include "zetamoments/arithmetic.hpp"
#include "zetamoments/dirichlet_poly.hpp"
#include "zetamoments/real.hpp"

#include <optional>
#include <vector>

namespace zm {

/// All per-block vectors are indexed from 1; slot 0 holds alpha_0 = 0 and
/// the lower end of I_1.
struct MollifierSchedule {
    Real T_param;
    Real log_T;
    Real loglogT;
    bool loglog_overridden = false;
    bool synthetic = false;  // built from explicit endpoints, not from alpha_j
    int M = 3;
    long J = 0;
    std::vector<Real> alphas;  // alphas[0] = 0
    std::vector<long> ells;    // ells[0] unused
    std::vector<Real> upper;   // upper[j] = T^{alpha_j}, upper[0] = 1

    Precision precision() const { return log_T.precision(); }
    /// Block j containing prime p, or 0 if p lies outside every I_j.
    long block_of(u64 p) const;
    /// floor(T^{alpha_j}) clamped to 64 bits.
    u64 upper_floor(long j) const;
    /// prod_j T^{alpha_j ell_j}, saturated to 64 bits; bounds the support of N.
    u64 support_cap() const;
    u64 block_cap(long j) const;
};

/// Throws DomainError when T <= e^e without an override, or M < 1.
MollifierSchedule build_schedule(const Real& T, int M, std::optional<double> loglog_override = std::nullopt);

/// A schedule with explicitly chosen interval endpoints 1 = u_0 < u_1 < ...
/// and truncation degrees; alpha_j = log u_j / log T. Used for exact toy
/// constructions.
MollifierSchedule custom_schedule(const Real& log_T, const std::vector<Real>& upper, const std::vector<long>& ells);

/// Primes of I_j from the table.
std::vector<u64> block_primes(const MollifierSchedule& sched, long j, const PrimeTable& table);

RationalPoly build_P_j(const MollifierSchedule& sched, long j, const PrimeTable& table);

/// N(s, alpha) = prod_j E_{ell_j}(alpha P_j(s)) as a Dirichlet polynomial.
RationalPoly build_N(const MollifierSchedule& sched, const Rational& alpha, const PrimeTable& table);
RealPoly build_N(const MollifierSchedule& sched, const Real& alpha, const PrimeTable& table);

/// a_alpha(n) = prod_j alpha^{Omega(n_j)} g(n_j) b_j(n_j), where n = prod n_j
/// groups the primes of n by block and b_j(n_j) = 1 iff Omega(n_j) <= ell_j.
Rational coefficient_a_alpha(u64 n, const MollifierSchedule& sched, const Rational& alpha);
Real coefficient_a_alpha(u64 n, const MollifierSchedule& sched, const Real& alpha);

/// Every n with a_alpha(n) != 0 for alpha != 0, ascending, by depth-first
/// search over block primes with Omega(n_j) <= ell_j. Throws
/// SupportOverflowError naming the block when the support would exceed
/// `max_size` entries or 64-bit indices.
std::vector<u64> enumerate_support(const MollifierSchedule& sched, const PrimeTable& table,
                                   std::size_t max_size = 5'000'000);
/// The n_j with b_j(n_j) = 1 for one block, ascending.
std::vector<u64> enumerate_block(const MollifierSchedule& sched, long j, const PrimeTable& table,
                                 long omega_limit, std::size_t max_size = 5'000'000);

/// c_j(p, n) = p^{-1/(alpha_j log T)} log(T^{alpha_j}/p)/log(T^{alpha_j}) + n - 1.
/// Throws DomainError for p > T^{alpha_j} or j outside 1..J.
Real c_weight(u64 p, const Real& n_shift, const MollifierSchedule& sched, long j);
/// Totally multiplicative extension c_j(n, k) = prod c_j(p, k)^e.
Real c_weight_multiplicative(u64 n, const Real& n_shift, const MollifierSchedule& sched, long j);

/// M_{l,j}(gamma) = sum_{p in I_l} p^{-i gamma} p^{-1/2} c_j(p, 1), 1 <= l <= j <= J.
Complex M_lj(const Real& gamma, long l, long j, const MollifierSchedule& sched, const PrimeTable& table);
/// M'_{l,j}(gamma) with weight c_j(p, k); for l = 1 only primes p > 2^{m+1}.
Complex M_prime_lj(const Real& gamma, long l, long j, const Real& k, long m, const MollifierSchedule& sched,
                   const PrimeTable& table);
/// P_m(gamma) = sum_{2^m < p <= 2^{m+1}} p^{-2 i gamma}/(2p).
Complex P_m_sum(const Real& gamma, long m, const PrimeTable& table);
/// P_j(1/2 + i gamma) for j = 1..J (slot 0 unused).
std::vector<Complex> block_values(const Real& gamma, const MollifierSchedule& sched, const PrimeTable& table);

/// Largest m for which P_m is tested: min(floor(loglogT / log 2), table reach).
long max_P_index(const MollifierSchedule& sched, const PrimeTable& table);

/// E_degree(z) = sum_{r=0}^{degree} z^r / r!.
Complex truncated_exp_value(const Complex& z, long degree);
/// N(rho, alpha) from block values: prod_j E_{ell_j}(alpha P_j(rho)).
Complex mollifier_value(const std::vector<Complex>& blocks, const MollifierSchedule& sched, const Real& alpha);

struct GammaClass {
    long s_index = 0;
    std::optional<long> p_index;
    bool in_T = false;
    friend bool operator==(const GammaClass&, const GammaClass&) = default;
};

/// Inputs of the classifier at one ordinate. M[m][l] for 1 <= m <= l <= J,
/// P[m] for 0 <= m <= max_P_index.
struct ClassifierInputs {
    std::vector<std::vector<Complex>> M;
    std::vector<Complex> P;
    Real kP1_abs;
};

ClassifierInputs classifier_inputs(const Real& gamma, const MollifierSchedule& sched, const PrimeTable& table,
                                   const Real& k);
/// s_index: the first m whose row has some |M_{m,l}| > alpha_m^{-3/4} gives
/// class m - 1; no such row gives J. p_index: the largest m with
/// |P_m| > 2^{-m/10}. in_T: |k P_1| <= alpha_1^{-3/4}/(1 - 1/k).
GammaClass classify_values(const ClassifierInputs& in, const MollifierSchedule& sched, const Real& k);
GammaClass classify_gamma(const Real& gamma, const MollifierSchedule& sched, const PrimeTable& table, const Real& k);

/// Q_l(rho, k) from the block value P_l(rho).
Complex Q_l_value(const Complex& P_l, const Real& k, long l, long j, const MollifierSchedule& sched);
Complex Q_l(const Real& gamma, const Real& k, long l, long j, const MollifierSchedule& sched, const PrimeTable& table);

/// Both sides of |N_l| <= |(k-1) e^{(e(1-1/k))^{-1}} alpha_l^{3/4} P_l|^{ell_l},
/// meaningful when |k P_l| > alpha_l^{-3/4}/(1-1/k).
struct BlockBound {
    bool triggered;
    Real block_abs;
    Real bound;
};
BlockBound N_l_bound(const Complex& P_l, const Real& k, long l, const MollifierSchedule& sched);

/// The factor r in |N_1(rho,k)|^2 = exp(2k Re P_1(rho)) (1 + r), together
/// with the bound implied by the truncated exponential remainder at
/// z = k P_1 and d = ell_1 + 1: with eps = |z|^d/d! e^{|z|}, |r| <= 2 eps + eps^2.
struct N1Check {
    bool in_T;
    Real r;
    Real bound;
    bool holds() const { return abs(r) <= bound; }
};
N1Check N1_check(const Complex& P_1, const Real& k, const MollifierSchedule& sched);

/// The support predicate b_j and the Rankin factor 2^{Omega - ell}; returns
/// false if any enumerated violating n_j had 2^{Omega(n_j) - ell_j} < 1.
bool rankin_guard(const MollifierSchedule& sched, const PrimeTable& table, long extra_omega);

}  // namespace zm
