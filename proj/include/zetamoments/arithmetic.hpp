#pragma once

// Prime sieving and the arithmetic functions used by the mollifier and the
// explicit-formula checks: Lambda, the truncated Lambda_L, Omega, omega, g,
// integer factorization, and partial sums over primes.

#include "zetamoments/real.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace zm {

using u64 = std::uint64_t;
using Rational = mpq_class;

/// Thrown when an argument lies outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when a prime table does not reach far enough for a request.
class InsufficientTableError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// All primes up to `limit`, ascending, with their natural logarithms cached
/// at the table's precision. Immutable after construction.
class PrimeTable {
public:
    PrimeTable() = default;
    PrimeTable(u64 limit, std::vector<u64> primes, Precision prec);

    u64 limit() const noexcept { return limit_; }
    Precision precision() const noexcept { return prec_; }
    std::span<const u64> primes() const noexcept { return primes_; }
    std::size_t size() const noexcept { return primes_.size(); }

    bool is_prime(u64 n) const;
    /// Natural log of a listed prime. Throws DomainError for non-primes and
    /// InsufficientTableError beyond the limit.
    const Real& log_p(u64 p) const;
    const Real& log_at(std::size_t index) const { return logs_[index]; }
    /// Primes p with lo < p <= hi. Throws if hi exceeds the limit.
    std::span<const u64> primes_in(u64 lo_exclusive, u64 hi_inclusive) const;
    std::size_t index_of(u64 p) const;

private:
    u64 limit_ = 0;
    std::vector<u64> primes_;
    std::vector<Real> logs_;
    Precision prec_ = kDefaultPrecision;
};

/// Segmented sieve of Eratosthenes. Throws DomainError for limit < 2.
PrimeTable sieve_primes(u64 limit, Precision prec = kDefaultPrecision);

struct PrimePower {
    u64 prime;
    unsigned exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    u64 n = 1;
    std::vector<PrimePower> factors;  // primes ascending
    unsigned big_omega = 0;           // Omega(n)
    unsigned small_omega = 0;         // omega(n)
    Rational g_value = 1;             // prod 1/e!
};

bool is_prime_u64(u64 n);
/// Prime factorization by trial division of small primes followed by
/// Pollard-Brent rho; deterministic. Throws DomainError for n == 0.
Factorization factorize(u64 n);
/// Signed entry point matching the domain contract (n <= 0 throws).
Factorization factorize_signed(long long n);

/// g(n) = prod over p^e || n of 1/e!.
Rational g_function(const Factorization& f);

/// If n = p^k with k >= 1, returns p.
std::optional<u64> prime_power_base(u64 n);

Real von_mangoldt(u64 n, Precision prec = kDefaultPrecision);
/// Lambda(a/b), zero unless b divides a and a/b is a prime power.
Real von_mangoldt_ratio(u64 a, u64 b, Precision prec = kDefaultPrecision);
/// Lambda restricted to primes and to prime squares not exceeding L.
Real von_mangoldt_truncated(u64 n, const Real& L);

/// sum_{p <= x} 1/p in ascending prime order.
Real mertens_reciprocal_sum(u64 x, const PrimeTable& table);
/// sum_{p <= x} log(p)/p in ascending prime order.
Real mertens_logp_sum(u64 x, const PrimeTable& table);

/// Checked multiplication; nullopt on overflow.
std::optional<u64> checked_mul(u64 a, u64 b);

}  // namespace zm
