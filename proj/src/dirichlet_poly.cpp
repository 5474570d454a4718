#include "zetamoments/dirichlet_poly.hpp"

#include <algorithm>
#include <cmath>

namespace zm {

const Complex& PowerCache::prime_power(u64 p, unsigned e) {
    u64 key = p;
    for (unsigned i = 1; i < e; ++i) key *= p;
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Complex value(s_.precision());
    if (e == 1) {
        value = zm::inverse_power(log(Real(static_cast<unsigned long>(p), s_.precision())), s_);
    } else {
        value = prime_power(p, e - 1) * prime_power(p, 1);
    }
    return cache_.emplace(key, std::move(value)).first->second;
}

Complex PowerCache::inverse_power(u64 n) {
    if (n == 0) throw DomainError("inverse_power: n must be >= 1");
    Complex out(Real(1L, s_.precision()), Real(s_.precision()));
    if (n == 1) return out;
    const Factorization f = factorize(n);
    for (const auto& pp : f.factors) out *= prime_power(pp.prime, pp.exponent);
    return out;
}

RemainderCheck remainder_check(const Complex& z, long d) {
    if (d < 1) throw DomainError("remainder_check: d must be >= 1");
    const Precision prec = z.precision();
    if (z.is_zero()) return {Real(prec), Real(prec)};

    // The partial sum has terms up to about e^{|z|} while the difference can
    // be as small as |z|^d/d!, so carry enough bits to resolve it.
    const double r = abs(z).to_double();
    const double log2_first_dropped = static_cast<double>(d) * std::log2(r) - std::lgamma(static_cast<double>(d) + 1.0) / std::log(2.0);
    const double extra = std::max(0.0, -log2_first_dropped) + 2.0 * r / std::log(2.0) + 64.0;
    const Precision W = prec + static_cast<Precision>(std::ceil(extra));

    Complex zw = z;
    zw.round_to(W);
    Complex partial(Real(1L, W), Real(W));
    Complex term = partial;
    for (long j = 1; j < d; ++j) {
        term *= zw;
        term /= Real(j, W);
        partial += term;
    }
    const Real lhs = abs(exp(zw) - partial);
    const Real modulus = abs(zw);
    const Real bound = pow(modulus, d) / factorial(static_cast<unsigned long>(d), W) * exp(zw.re + modulus);
    return {lhs.rounded(prec), bound.rounded(prec)};
}

}  // namespace zm
