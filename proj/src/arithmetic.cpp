#include "zetamoments/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace zm {

PrimeTable::PrimeTable(u64 limit, std::vector<u64> primes, Precision prec)
    : limit_(limit), primes_(std::move(primes)), prec_(prec) {
    logs_.reserve(primes_.size());
    for (u64 p : primes_) logs_.push_back(log(Real(static_cast<unsigned long>(p), prec_)));
}

bool PrimeTable::is_prime(u64 n) const {
    if (n > limit_) throw InsufficientTableError("prime table limit " + std::to_string(limit_) + " < " + std::to_string(n));
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::size_t PrimeTable::index_of(u64 p) const {
    if (p > limit_) throw InsufficientTableError("prime table limit " + std::to_string(limit_) + " < " + std::to_string(p));
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p) throw DomainError(std::to_string(p) + " is not prime");
    return static_cast<std::size_t>(it - primes_.begin());
}

const Real& PrimeTable::log_p(u64 p) const { return logs_[index_of(p)]; }

std::span<const u64> PrimeTable::primes_in(u64 lo_exclusive, u64 hi_inclusive) const {
    if (hi_inclusive > limit_) {
        throw InsufficientTableError("prime table limit " + std::to_string(limit_) + " does not cover " +
                                     std::to_string(hi_inclusive));
    }
    if (hi_inclusive <= lo_exclusive) return {};
    auto first = std::upper_bound(primes_.begin(), primes_.end(), lo_exclusive);
    auto last = std::upper_bound(first, primes_.end(), hi_inclusive);
    return {first, last};
}

PrimeTable sieve_primes(u64 limit, Precision prec) {
    if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2");
    const u64 root = static_cast<u64>(std::sqrt(static_cast<long double>(limit))) + 1;

    // base primes up to sqrt(limit)
    std::vector<char> small(root + 1, 1);
    small[0] = 0;
    if (root >= 1) small[1] = 0;
    for (u64 i = 2; i * i <= root; ++i)
        if (small[i])
            for (u64 j = i * i; j <= root; j += i) small[j] = 0;
    std::vector<u64> base;
    for (u64 i = 2; i <= root; ++i)
        if (small[i]) base.push_back(i);

    std::vector<u64> primes;
    if (limit > 1000) primes.reserve(static_cast<std::size_t>(1.1 * limit / std::log(static_cast<double>(limit))));

    constexpr u64 kSegment = u64{1} << 18;
    std::vector<char> seg(kSegment);
    for (u64 lo = 2; lo <= limit; lo += kSegment) {
        const u64 hi = std::min(limit, lo + kSegment - 1);
        std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(hi - lo + 1), 1);
        for (u64 p : base) {
            if (p * p > hi) break;
            u64 start = std::max(p * p, (lo + p - 1) / p * p);
            for (u64 j = start; j <= hi; j += p) seg[j - lo] = 0;
        }
        for (u64 n = lo; n <= hi; ++n)
            if (seg[n - lo]) primes.push_back(n);
        if (hi == limit) break;
    }
    return PrimeTable(limit, std::move(primes), prec);
}

std::optional<u64> checked_mul(u64 a, u64 b) {
    u64 out = 0;
    if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
    return out;
}

namespace {

using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 e, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

constexpr u64 kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            }
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    const u64 d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : kSmallPrimes) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are deterministic for all 64-bit integers.
    for (u64 a : kSmallPrimes) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Factorization factorize(u64 n) {
    if (n == 0) throw DomainError("factorize: n must be >= 1");
    Factorization f;
    f.n = n;
    std::vector<u64> primes;
    u64 rest = n;
    for (u64 p = 2; p < 1000 && p * p <= rest; p += (p == 2 ? 1 : 2)) {
        while (rest % p == 0) {
            primes.push_back(p);
            rest /= p;
        }
    }
    if (rest > 1) factor_into(rest, primes);
    std::sort(primes.begin(), primes.end());
    for (u64 p : primes) {
        if (!f.factors.empty() && f.factors.back().prime == p) {
            ++f.factors.back().exponent;
        } else {
            f.factors.push_back({p, 1});
        }
    }
    f.small_omega = static_cast<unsigned>(f.factors.size());
    f.big_omega = static_cast<unsigned>(primes.size());
    f.g_value = g_function(f);
    return f;
}

Factorization factorize_signed(long long n) {
    if (n <= 0) throw DomainError("factorize: n must be >= 1");
    return factorize(static_cast<u64>(n));
}

Rational g_function(const Factorization& f) {
    mpz_class denom = 1;
    for (const auto& pp : f.factors) {
        mpz_class fac;
        mpz_fac_ui(fac.get_mpz_t(), pp.exponent);
        denom *= fac;
    }
    return Rational(mpz_class(1), denom);
}

std::optional<u64> prime_power_base(u64 n) {
    if (n < 2) return std::nullopt;
    const Factorization f = factorize(n);
    if (f.small_omega != 1) return std::nullopt;
    return f.factors.front().prime;
}

Real von_mangoldt(u64 n, Precision prec) {
    if (n == 0) throw DomainError("von_mangoldt: n must be >= 1");
    if (auto p = prime_power_base(n)) return log(Real(static_cast<unsigned long>(*p), prec));
    return Real(prec);
}

Real von_mangoldt_ratio(u64 a, u64 b, Precision prec) {
    if (a == 0 || b == 0) throw DomainError("von_mangoldt_ratio: a, b must be >= 1");
    if (a % b != 0) return Real(prec);
    return von_mangoldt(a / b, prec);
}

Real von_mangoldt_truncated(u64 n, const Real& L) {
    if (n == 0) throw DomainError("von_mangoldt_truncated: n must be >= 1");
    if (!(L > 0L)) throw DomainError("von_mangoldt_truncated: L must be positive");
    const Precision prec = L.precision();
    if (n < 2) return Real(prec);
    const Factorization f = factorize(n);
    if (f.small_omega != 1) return Real(prec);
    const unsigned e = f.factors.front().exponent;
    if (e == 1 || (e == 2 && Real(static_cast<unsigned long>(n), prec) <= L)) {
        return log(Real(static_cast<unsigned long>(f.factors.front().prime), prec));
    }
    return Real(prec);
}

Real mertens_reciprocal_sum(u64 x, const PrimeTable& table) {
    if (x < 2) throw DomainError("mertens_reciprocal_sum: x must be >= 2");
    const auto ps = table.primes_in(0, x);
    Real sum(table.precision());
    Real one(1L, table.precision());
    for (u64 p : ps) sum += one / static_cast<long>(p);
    return sum;
}

Real mertens_logp_sum(u64 x, const PrimeTable& table) {
    if (x < 2) throw DomainError("mertens_logp_sum: x must be >= 2");
    const auto ps = table.primes_in(0, x);
    Real sum(table.precision());
    const std::size_t first = ps.empty() ? 0 : table.index_of(ps.front());
    for (std::size_t i = 0; i < ps.size(); ++i) sum += table.log_at(first + i) / static_cast<long>(ps[i]);
    return sum;
}

}  // namespace zm
