#pragma once

// Sparse Dirichlet polynomials sum c(n) n^{-s} with exact or floating
// coefficients, capped products, truncated exponentials and the Lambda
// convolution.

#include "zetamoments/arithmetic.hpp"
#include "zetamoments/real.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace zm {

inline constexpr u64 kUnbounded = std::numeric_limits<u64>::max();

/// A product term n*m does not fit in 64 bits and no cap excuses it.
class SupportOverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
    static bool is_zero(const Rational& c) { return sgn(c) == 0; }
    static Rational from_long(long v, Precision) { return Rational(v); }
    static Rational divide(const Rational& c, long v) { return Rational(c / Rational(v)); }
};

template <>
struct CoeffTraits<Real> {
    static bool is_zero(const Real& c) { return c.is_zero(); }
    static Real from_long(long v, Precision prec) { return Real(v, prec); }
    static Real divide(const Real& c, long v) { return c / v; }
};

template <>
struct CoeffTraits<Complex> {
    static bool is_zero(const Complex& c) { return c.is_zero(); }
    static Complex from_long(long v, Precision prec) { return Complex(Real(v, prec), Real(prec)); }
    static Complex divide(const Complex& c, long v) { return Complex(c.re / v, c.im / v); }
};

/// Finitely supported coefficient map n -> c(n) with every key <= length_bound
/// and no stored zeros. `precision` seeds constants created by operations on
/// floating polynomials.
template <class C>
class DirichletPoly {
public:
    using Coeff = C;
    using Traits = CoeffTraits<C>;
    using Map = std::map<u64, C>;

    explicit DirichletPoly(u64 length_bound = kUnbounded, Precision prec = kDefaultPrecision)
        : bound_(length_bound), prec_(prec) {
        if (length_bound == 0) throw DomainError("DirichletPoly: length bound must be >= 1");
    }

    static DirichletPoly one(u64 length_bound = kUnbounded, Precision prec = kDefaultPrecision) {
        DirichletPoly p(length_bound, prec);
        p.set(1, Traits::from_long(1, prec));
        return p;
    }

    u64 length_bound() const noexcept { return bound_; }
    Precision precision() const noexcept { return prec_; }
    const Map& coeffs() const noexcept { return coeffs_; }
    bool empty() const noexcept { return coeffs_.empty(); }
    std::size_t size() const noexcept { return coeffs_.size(); }
    u64 max_index() const noexcept { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    const C* find(u64 n) const {
        auto it = coeffs_.find(n);
        return it == coeffs_.end() ? nullptr : &it->second;
    }
    C coefficient(u64 n) const {
        const C* c = find(n);
        return c ? *c : Traits::from_long(0, prec_);
    }

    void set(u64 n, C c) {
        check_index(n);
        if (Traits::is_zero(c)) {
            coeffs_.erase(n);
        } else {
            coeffs_.insert_or_assign(n, std::move(c));
        }
    }

    void add(u64 n, const C& c) {
        check_index(n);
        if (Traits::is_zero(c)) return;
        auto it = coeffs_.find(n);
        if (it == coeffs_.end()) {
            coeffs_.emplace(n, c);
            return;
        }
        it->second += c;
        if (Traits::is_zero(it->second)) coeffs_.erase(it);
    }

    friend bool operator==(const DirichletPoly& a, const DirichletPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
    void check_index(u64 n) const {
        if (n == 0) throw DomainError("DirichletPoly: index must be >= 1");
        if (n > bound_) throw DomainError("DirichletPoly: index " + std::to_string(n) + " exceeds length bound");
    }

    u64 bound_;
    Precision prec_;
    Map coeffs_;
};

using RationalPoly = DirichletPoly<Rational>;
using RealPoly = DirichletPoly<Real>;
using ComplexPoly = DirichletPoly<Complex>;

struct TruncationSpec {
    Real ell;
    long degree;  // ceil(ell)

    static TruncationSpec from_ell(const Real& ell) { return {ell, ceil_to_long(ell)}; }
    static TruncationSpec from_degree(long degree) { return {Real(degree, 64), degree}; }
};

/// Saturating product of two length bounds.
inline u64 bound_product(u64 a, u64 b) {
    auto p = checked_mul(a, b);
    return p ? *p : kUnbounded;
}

template <class C>
DirichletPoly<C> add(const DirichletPoly<C>& a, const DirichletPoly<C>& b) {
    DirichletPoly<C> out(std::max(a.length_bound(), b.length_bound()), std::max(a.precision(), b.precision()));
    for (const auto& [n, c] : a.coeffs()) out.add(n, c);
    for (const auto& [n, c] : b.coeffs()) out.add(n, c);
    return out;
}

template <class C, class S>
DirichletPoly<C> scale(const DirichletPoly<C>& a, const S& factor) {
    DirichletPoly<C> out(a.length_bound(), a.precision());
    for (const auto& [n, c] : a.coeffs()) out.set(n, C(c * factor));
    return out;
}

/// Product with every index above `cap` dropped. An index product that
/// overflows 64 bits is dropped when the cap is finite and raises
/// SupportOverflowError when the cap is unbounded.
template <class C>
DirichletPoly<C> multiply(const DirichletPoly<C>& a, const DirichletPoly<C>& b, u64 cap) {
    if (cap == 0) throw DomainError("multiply: cap must be >= 1");
    const u64 bound = std::min(cap, bound_product(a.length_bound(), b.length_bound()));
    DirichletPoly<C> out(bound, std::max(a.precision(), b.precision()));
    for (const auto& [n, cn] : a.coeffs()) {
        for (const auto& [m, cm] : b.coeffs()) {
            const auto nm = checked_mul(n, m);
            if (!nm) {
                if (cap != kUnbounded) break;
                throw SupportOverflowError("multiply: index " + std::to_string(n) + "*" + std::to_string(m) +
                                           " overflows 64 bits");
            }
            if (*nm > cap) break;  // b's keys ascend
            out.add(*nm, C(cn * cm));
        }
    }
    return out;
}

/// E_ell(p) = sum_{j=0}^{degree} p^j / j!, each power formed by one more capped
/// multiplication so dropped terms match the multinomial support.
template <class C>
DirichletPoly<C> truncated_exp(const DirichletPoly<C>& p, const TruncationSpec& spec, u64 cap) {
    using Traits = CoeffTraits<C>;
    if (cap == 0) throw DomainError("truncated_exp: cap must be >= 1");
    if (spec.degree < 0) throw DomainError("truncated_exp: degree must be >= 0");
    DirichletPoly<C> result = DirichletPoly<C>::one(cap, p.precision());
    DirichletPoly<C> power = result;
    for (long j = 1; j <= spec.degree; ++j) {
        DirichletPoly<C> next = multiply(power, p, cap);
        DirichletPoly<C> scaled(cap, p.precision());
        for (const auto& [n, c] : next.coeffs()) scaled.set(n, Traits::divide(c, j));
        power = std::move(scaled);
        if (power.empty()) break;
        for (const auto& [n, c] : power.coeffs()) result.add(n, c);
    }
    return result;
}

inline Complex to_complex(const Rational& c, Precision prec) { return Complex(Real(c, prec)); }
inline Complex to_complex(const Real& c, Precision prec) { return Complex(c.rounded(prec)); }
inline Complex to_complex(const Complex& c, Precision prec) {
    Complex out = c;
    out.round_to(prec);
    return out;
}

/// Caches n^{-s} for a fixed s by multiplying cached prime powers.
class PowerCache {
public:
    explicit PowerCache(Complex s) : s_(std::move(s)) {}
    const Complex& s() const noexcept { return s_; }
    Complex inverse_power(u64 n);

private:
    const Complex& prime_power(u64 p, unsigned e);

    Complex s_;
    std::unordered_map<u64, Complex> cache_;
};

/// Exact finite sum sum c(n) n^{-s} at the precision of s.
template <class C>
Complex evaluate(const DirichletPoly<C>& p, const Complex& s) {
    const Precision prec = s.precision();
    Complex sum(prec);
    PowerCache cache(s);
    for (const auto& [n, c] : p.coeffs()) {
        if (n == 1) {
            sum += to_complex(c, prec);
        } else {
            sum += cache.inverse_power(n) * to_complex(c, prec);
        }
    }
    return sum;
}

/// A value sum_p c_p log p, kept exact by recording the coefficient of each
/// prime's logarithm.
template <class C>
using LogLinear = std::map<u64, C>;

template <class C>
Real log_linear_value(const LogLinear<C>& v, Precision prec) {
    Real sum(prec);
    for (const auto& [p, c] : v) {
        Real w = to_complex(c, prec).re;
        sum += w * log(Real(static_cast<unsigned long>(p), prec));
    }
    return sum;
}

/// (Lambda * a)(n) for every n <= cap, exact. (Lambda*a)(n) =
/// sum over p^j m = n of log(p) a(m).
template <class C>
std::map<u64, LogLinear<C>> dirichlet_convolve_vonmangoldt(const DirichletPoly<C>& a, u64 cap) {
    std::map<u64, LogLinear<C>> out;
    if (a.empty() || cap < 2) return out;
    const PrimeTable table = sieve_primes(std::max<u64>(2, cap / a.coeffs().begin()->first), 64);
    for (const auto& [m, c] : a.coeffs()) {
        if (m > cap / 2) break;
        const u64 room = cap / m;
        for (u64 p : table.primes_in(0, std::min(room, table.limit()))) {
            for (u64 q = p; q <= room; ) {
                auto& entry = out[q * m];
                auto it = entry.find(p);
                if (it == entry.end()) {
                    entry.emplace(p, c);
                } else {
                    it->second += c;
                    if (CoeffTraits<C>::is_zero(it->second)) entry.erase(it);
                }
                if (q > room / p) break;
                q *= p;
            }
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second.empty() ? out.erase(it) : std::next(it);
    }
    return out;
}

/// (Lambda * a)(n) for n in the support of a only.
template <class C>
std::map<u64, LogLinear<C>> dirichlet_convolve_vonmangoldt_on_support(const DirichletPoly<C>& a) {
    std::map<u64, LogLinear<C>> out;
    for (const auto& [n, unused] : a.coeffs()) {
        (void)unused;
        if (n == 1) continue;
        const Factorization f = factorize(n);
        LogLinear<C> value;
        for (const auto& pp : f.factors) {
            u64 m = n;
            for (unsigned j = 1; j <= pp.exponent; ++j) {
                m /= pp.prime;
                if (const C* c = a.find(m)) {
                    auto it = value.find(pp.prime);
                    if (it == value.end()) {
                        value.emplace(pp.prime, *c);
                    } else {
                        it->second += *c;
                    }
                }
            }
        }
        for (auto it = value.begin(); it != value.end();) {
            it = CoeffTraits<C>::is_zero(it->second) ? value.erase(it) : std::next(it);
        }
        if (!value.empty()) out.emplace(n, std::move(value));
    }
    return out;
}

struct RemainderCheck {
    Real lhs;    // |e^z - sum_{j<d} z^j/j!|
    Real bound;  // |z|^d/d! e^{Re z} e^{|z|}
    bool holds() const { return lhs <= bound; }
};

/// Evaluates both sides of the truncated-exponential remainder inequality at
/// a precision raised to absorb cancellation; results are rounded to the
/// precision of z.
RemainderCheck remainder_check(const Complex& z, long d);

}  // namespace zm
