#include "zetamoments/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zm {

namespace {

u64 saturating_floor(const Real& x) {
    if (!(x < 1.8e19)) return kUnbounded;
    if (x < 0L) return 0;
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x.raw(), MPFR_RNDD);
    return z.fits_ulong_p() ? z.get_ui() : kUnbounded;
}

u64 saturating_ceil(const Real& x) {
    if (!(x < 1.8e19)) return kUnbounded;
    if (x < 0L) return 0;
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x.raw(), MPFR_RNDU);
    return z.fits_ulong_p() ? z.get_ui() : kUnbounded;
}

void check_block(const MollifierSchedule& sched, long j, const char* what) {
    if (j < 1 || j > sched.J) {
        throw DomainError(std::string(what) + ": block " + std::to_string(j) + " outside 1.." + std::to_string(sched.J));
    }
}

void require_negative(const Real& k, const char* what) {
    if (!(k < 0L)) throw DomainError(std::string(what) + ": k must be negative");
}

// alpha^{-3/4}
Real alpha_power(const Real& alpha, double e) { return exp(log(alpha) * e); }

template <class C>
C block_coefficient(const Factorization& f, const MollifierSchedule& sched, const C& alpha, C one) {
    std::vector<long> omega(static_cast<std::size_t>(sched.J) + 1, 0);
    Rational g = 1;
    for (const auto& pp : f.factors) {
        const long j = sched.block_of(pp.prime);
        if (j == 0) return C(one * 0L);
        omega[static_cast<std::size_t>(j)] += pp.exponent;
        mpz_class fac;
        mpz_fac_ui(fac.get_mpz_t(), pp.exponent);
        g /= fac;
    }
    for (long j = 1; j <= sched.J; ++j) {
        if (omega[static_cast<std::size_t>(j)] > sched.ells[static_cast<std::size_t>(j)]) return C(one * 0L);
    }
    C out = one;
    for (unsigned i = 0; i < f.big_omega; ++i) out = C(out * alpha);
    return out;
}

std::vector<u64> enumerate_products(const std::vector<u64>& primes, long omega_limit, u64 cap, std::size_t max_size,
                                    long block) {
    std::vector<u64> out{1};
    // depth-first over primes in ascending order, non-decreasing prime index
    struct Frame {
        u64 n;
        std::size_t first;
        long omega;
    };
    std::vector<Frame> stack{{1, 0, 0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.omega >= omega_limit) continue;
        for (std::size_t i = f.first; i < primes.size(); ++i) {
            const auto next = checked_mul(f.n, primes[i]);
            if (!next || *next > cap) {
                if (!next && cap == kUnbounded) {
                    throw SupportOverflowError("support of block " + std::to_string(block) + " overflows 64 bits");
                }
                break;
            }
            out.push_back(*next);
            if (out.size() > max_size) {
                throw SupportOverflowError("support of block " + std::to_string(block) + " exceeds " +
                                           std::to_string(max_size) + " entries");
            }
            stack.push_back({*next, i, f.omega + 1});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <class C>
DirichletPoly<C> build_N_impl(const MollifierSchedule& sched, const C& alpha, C one, const PrimeTable& table,
                              Precision prec) {
    const u64 cap = sched.support_cap();
    DirichletPoly<C> result(cap, prec);
    result.set(1, one);
    for (long j = 1; j <= sched.J; ++j) {
        DirichletPoly<C> block(sched.upper_floor(j) == 0 ? 1 : std::max<u64>(1, sched.upper_floor(j)), prec);
        for (u64 p : block_primes(sched, j, table)) block.set(p, alpha);
        const DirichletPoly<C> e =
            truncated_exp(block, TruncationSpec::from_degree(sched.ells[static_cast<std::size_t>(j)]), sched.block_cap(j));
        result = multiply(result, e, cap);
    }
    return result;
}

Complex cis_sum(const Real& gamma, const std::vector<u64>& primes, const PrimeTable& table, long scale_gamma,
                const auto& weight) {
    const Precision P = table.precision();
    Complex sum(P);
    const Real g = gamma.rounded(P) * scale_gamma;
    for (u64 p : primes) {
        const Real& lp = table.log_at(table.index_of(p));
        Complex term = cis(-(g * lp));
        term *= weight(p, lp);
        sum += term;
    }
    return sum;
}

}  // namespace

long MollifierSchedule::block_of(u64 p) const {
    if (p < 2) return 0;
    const Real x(static_cast<unsigned long>(p), precision());
    for (long j = 1; j <= J; ++j) {
        if (x > upper[static_cast<std::size_t>(j - 1)] && x <= upper[static_cast<std::size_t>(j)]) return j;
    }
    return 0;
}

u64 MollifierSchedule::upper_floor(long j) const { return saturating_floor(upper[static_cast<std::size_t>(j)]); }

u64 MollifierSchedule::block_cap(long j) const {
    const auto uj = static_cast<std::size_t>(j);
    if (upper[uj] <= 1L) return 1;
    return saturating_ceil(exp(log(upper[uj]) * ells[uj]));
}

u64 MollifierSchedule::support_cap() const {
    Real e(precision());
    for (long j = 1; j <= J; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (upper[uj] > 1L) e += log(upper[uj]) * ells[uj];
    }
    if (e > 45L) return kUnbounded;
    return std::max<u64>(1, saturating_ceil(exp(e)));
}

MollifierSchedule build_schedule(const Real& T, int M, std::optional<double> loglog_override) {
    if (M < 1) throw DomainError("build_schedule: M must be >= 1");
    if (!(T > 1L)) throw DomainError("build_schedule: T must exceed 1");
    const Precision P = std::max<Precision>(T.precision(), kDefaultPrecision);
    MollifierSchedule s;
    s.T_param = T.rounded(P);
    s.log_T = log(s.T_param);
    s.M = M;
    if (loglog_override) {
        if (!(*loglog_override > 0.0)) throw DomainError("build_schedule: loglog override must be positive");
        s.loglogT = Real(*loglog_override, P);
        s.loglog_overridden = true;
    } else {
        if (!(s.log_T > const_e(P))) throw DomainError("build_schedule: T must exceed e^e without a loglog override");
        s.loglogT = log(s.log_T);
    }
    const Real denom = s.loglogT * s.loglogT;
    const Real threshold = Real(1L, P) / pow(Real(10L, P), static_cast<long>(M));
    s.alphas.emplace_back(P);
    long below = 0;
    for (long j = 1;; ++j) {
        Real a = pow(Real(20L, P), j - 1) / denom;
        if (!(a <= threshold)) break;
        ++below;
        if (below > 64) throw DomainError("build_schedule: too many blocks");
    }
    s.J = 1 + below;
    const Real e2 = exp(Real(2L, P));
    s.ells.push_back(0);
    s.upper.emplace_back(1L, P);
    for (long j = 1; j <= s.J; ++j) {
        Real a = pow(Real(20L, P), j - 1) / denom;
        s.ells.push_back(ceil_to_long(e2 * alpha_power(a, -0.75)));
        s.upper.push_back(exp(a * s.log_T));
        s.alphas.push_back(std::move(a));
    }
    return s;
}

MollifierSchedule custom_schedule(const Real& log_T, const std::vector<Real>& upper, const std::vector<long>& ells) {
    if (upper.size() != ells.size() || upper.empty()) throw DomainError("custom_schedule: need one degree per block");
    const Precision P = log_T.precision();
    MollifierSchedule s;
    s.synthetic = true;
    s.log_T = log_T;
    s.T_param = exp(log_T);
    s.loglogT = log(log_T);
    s.J = static_cast<long>(upper.size());
    s.alphas.emplace_back(P);
    s.ells.push_back(0);
    s.upper.emplace_back(1L, P);
    for (std::size_t i = 0; i < upper.size(); ++i) {
        if (!(upper[i] > s.upper.back())) throw DomainError("custom_schedule: endpoints must increase");
        if (ells[i] < 0) throw DomainError("custom_schedule: degrees must be >= 0");
        s.alphas.push_back(log(upper[i].rounded(P)) / log_T);
        s.ells.push_back(ells[i]);
        s.upper.push_back(upper[i].rounded(P));
    }
    return s;
}

std::vector<u64> block_primes(const MollifierSchedule& sched, long j, const PrimeTable& table) {
    check_block(sched, j, "block_primes");
    const u64 lo = sched.upper_floor(j - 1);
    const u64 hi = sched.upper_floor(j);
    if (hi <= lo) return {};
    const auto span = table.primes_in(lo, hi);
    return {span.begin(), span.end()};
}

RationalPoly build_P_j(const MollifierSchedule& sched, long j, const PrimeTable& table) {
    const auto primes = block_primes(sched, j, table);
    RationalPoly p(std::max<u64>(1, sched.upper_floor(j)));
    for (u64 q : primes) p.set(q, Rational(1));
    return p;
}

RationalPoly build_N(const MollifierSchedule& sched, const Rational& alpha, const PrimeTable& table) {
    return build_N_impl<Rational>(sched, alpha, Rational(1), table, sched.precision());
}

RealPoly build_N(const MollifierSchedule& sched, const Real& alpha, const PrimeTable& table) {
    return build_N_impl<Real>(sched, alpha, Real(1L, alpha.precision()), table, alpha.precision());
}

Rational coefficient_a_alpha(u64 n, const MollifierSchedule& sched, const Rational& alpha) {
    const Factorization f = factorize(n);
    Rational c = block_coefficient<Rational>(f, sched, alpha, Rational(1));
    return Rational(c * f.g_value);
}

Real coefficient_a_alpha(u64 n, const MollifierSchedule& sched, const Real& alpha) {
    const Factorization f = factorize(n);
    Real c = block_coefficient<Real>(f, sched, alpha, Real(1L, alpha.precision()));
    return c * Real(f.g_value, alpha.precision());
}

std::vector<u64> enumerate_block(const MollifierSchedule& sched, long j, const PrimeTable& table, long omega_limit,
                                 std::size_t max_size) {
    check_block(sched, j, "enumerate_block");
    return enumerate_products(block_primes(sched, j, table), omega_limit, kUnbounded, max_size, j);
}

std::vector<u64> enumerate_support(const MollifierSchedule& sched, const PrimeTable& table, std::size_t max_size) {
    std::vector<u64> support{1};
    for (long j = 1; j <= sched.J; ++j) {
        const auto block = enumerate_block(sched, j, table, sched.ells[static_cast<std::size_t>(j)], max_size);
        std::vector<u64> next;
        next.reserve(support.size() * block.size());
        for (u64 a : support) {
            for (u64 b : block) {
                const auto ab = checked_mul(a, b);
                if (!ab) throw SupportOverflowError("support overflows 64 bits at block " + std::to_string(j));
                next.push_back(*ab);
                if (next.size() > max_size) {
                    throw SupportOverflowError("support exceeds " + std::to_string(max_size) + " entries at block " +
                                               std::to_string(j));
                }
            }
        }
        support = std::move(next);
    }
    std::sort(support.begin(), support.end());
    return support;
}

Real c_weight(u64 p, const Real& n_shift, const MollifierSchedule& sched, long j) {
    check_block(sched, j, "c_weight");
    const Precision P = sched.precision();
    const Real A = sched.alphas[static_cast<std::size_t>(j)] * sched.log_T;  // log T^{alpha_j}
    const Real lp = log(Real(static_cast<unsigned long>(p), P));
    if (lp > A) throw DomainError("c_weight: p = " + std::to_string(p) + " exceeds T^{alpha_j}");
    return exp(-(lp / A)) * ((A - lp) / A) + n_shift - 1L;
}

Real c_weight_multiplicative(u64 n, const Real& n_shift, const MollifierSchedule& sched, long j) {
    Real out(1L, sched.precision());
    for (const auto& pp : factorize(n).factors) out *= pow(c_weight(pp.prime, n_shift, sched, j), static_cast<long>(pp.exponent));
    return out;
}

Complex M_lj(const Real& gamma, long l, long j, const MollifierSchedule& sched, const PrimeTable& table) {
    check_block(sched, j, "M_lj");
    if (l < 1 || l > j) throw DomainError("M_lj: need 1 <= l <= j");
    const Real one(1L, sched.precision());
    return cis_sum(gamma, block_primes(sched, l, table), table, 1, [&](u64 p, const Real& lp) {
        return exp(-(lp / 2L)) * c_weight(p, one, sched, j);
    });
}

Complex M_prime_lj(const Real& gamma, long l, long j, const Real& k, long m, const MollifierSchedule& sched,
                   const PrimeTable& table) {
    check_block(sched, j, "M_prime_lj");
    if (l < 1 || l > j) throw DomainError("M_prime_lj: need 1 <= l <= j");
    if (m < 0 || m > 62) throw DomainError("M_prime_lj: m out of range");
    auto primes = block_primes(sched, l, table);
    if (l == 1) {
        const u64 cut = u64{1} << (m + 1);
        std::erase_if(primes, [&](u64 p) { return p <= cut; });
    }
    return cis_sum(gamma, primes, table, 1, [&](u64 p, const Real& lp) {
        return exp(-(lp / 2L)) * c_weight(p, k, sched, j);
    });
}

Complex P_m_sum(const Real& gamma, long m, const PrimeTable& table) {
    if (m < 0 || m > 62) throw DomainError("P_m_sum: m out of range");
    const u64 lo = u64{1} << m;
    const auto span = table.primes_in(lo, lo * 2);
    const std::vector<u64> primes(span.begin(), span.end());
    return cis_sum(gamma, primes, table, 2, [&](u64 p, const Real&) {
        return Real(1L, table.precision()) / static_cast<long>(2 * p);
    });
}

std::vector<Complex> block_values(const Real& gamma, const MollifierSchedule& sched, const PrimeTable& table) {
    std::vector<Complex> out;
    out.emplace_back(table.precision());
    for (long j = 1; j <= sched.J; ++j) {
        out.push_back(cis_sum(gamma, block_primes(sched, j, table), table, 1,
                              [](u64, const Real& lp) { return exp(-(lp / 2L)); }));
    }
    return out;
}

long max_P_index(const MollifierSchedule& sched, const PrimeTable& table) {
    const long by_height = static_cast<long>(std::floor((sched.loglogT / const_log2(sched.precision())).to_double()));
    long by_table = -1;
    while (by_table < 62 && (u64{1} << (by_table + 2)) <= table.limit()) ++by_table;
    return std::min(by_height, by_table);
}

Complex truncated_exp_value(const Complex& z, long degree) {
    const Precision P = z.precision();
    Complex sum(Real(1L, P), Real(P));
    Complex term = sum;
    for (long r = 1; r <= degree; ++r) {
        term *= z;
        term /= Real(r, P);
        sum += term;
    }
    return sum;
}

Complex mollifier_value(const std::vector<Complex>& blocks, const MollifierSchedule& sched, const Real& alpha) {
    const Precision P = std::max(alpha.precision(), blocks.empty() ? alpha.precision() : blocks.back().precision());
    Complex out(Real(1L, P), Real(P));
    for (long j = 1; j <= sched.J; ++j) {
        out *= truncated_exp_value(blocks[static_cast<std::size_t>(j)] * alpha, sched.ells[static_cast<std::size_t>(j)]);
    }
    return out;
}

ClassifierInputs classifier_inputs(const Real& gamma, const MollifierSchedule& sched, const PrimeTable& table,
                                   const Real& k) {
    ClassifierInputs in;
    in.M.resize(static_cast<std::size_t>(sched.J) + 1);
    for (long m = 1; m <= sched.J; ++m) {
        auto& row = in.M[static_cast<std::size_t>(m)];
        row.resize(static_cast<std::size_t>(sched.J) + 1, Complex(table.precision()));
        if (block_primes(sched, m, table).empty()) continue;
        for (long l = m; l <= sched.J; ++l) row[static_cast<std::size_t>(l)] = M_lj(gamma, m, l, sched, table);
    }
    const long pmax = max_P_index(sched, table);
    for (long m = 0; m <= pmax; ++m) in.P.push_back(P_m_sum(gamma, m, table));
    const auto blocks = block_values(gamma, sched, table);
    in.kP1_abs = abs(blocks[1]) * abs(k);
    return in;
}

GammaClass classify_values(const ClassifierInputs& in, const MollifierSchedule& sched, const Real& k) {
    require_negative(k, "classify");
    GammaClass c;
    c.s_index = sched.J;
    for (long m = 1; m <= sched.J && c.s_index == sched.J; ++m) {
        const Real threshold = alpha_power(sched.alphas[static_cast<std::size_t>(m)], -0.75);
        const auto& row = in.M[static_cast<std::size_t>(m)];
        for (long l = m; l <= sched.J; ++l) {
            if (abs(row[static_cast<std::size_t>(l)]) > threshold) {
                c.s_index = m - 1;
                break;
            }
        }
    }
    for (long m = static_cast<long>(in.P.size()) - 1; m >= 0; --m) {
        const Real threshold = exp(const_log2(k.precision()) * (-static_cast<double>(m) / 10.0));
        if (abs(in.P[static_cast<std::size_t>(m)]) > threshold) {
            c.p_index = m;
            break;
        }
    }
    const Real one(1L, k.precision());
    const Real limit = alpha_power(sched.alphas[1], -0.75) / (one - one / k);
    c.in_T = in.kP1_abs <= limit;
    return c;
}

GammaClass classify_gamma(const Real& gamma, const MollifierSchedule& sched, const PrimeTable& table, const Real& k) {
    require_negative(k, "classify_gamma");
    return classify_values(classifier_inputs(gamma, sched, table, k), sched, k);
}

Complex Q_l_value(const Complex& P_l, const Real& k, long l, long j, const MollifierSchedule& sched) {
    require_negative(k, "Q_l");
    check_block(sched, l, "Q_l");
    const Precision P = std::max(P_l.precision(), k.precision());
    const Real one(1L, P);
    const Real& alpha = sched.alphas[static_cast<std::size_t>(l)];
    const Real a34 = alpha_power(alpha, 0.75);
    Real scale(P);
    long exponent = 0;
    if (l != j + 1) {
        scale = (one - k) * 2L * exp(one / (const_e(P) * (one - one / k))) * a34;
        exponent = ceil_to_long(one - one / k) * sched.ells[static_cast<std::size_t>(l)];
    } else {
        scale = (one - k) * 4L * a34;
        exponent = ceil_to_long(one / (alpha * 10L));
    }
    return pow(P_l * scale, static_cast<unsigned long>(exponent));
}

Complex Q_l(const Real& gamma, const Real& k, long l, long j, const MollifierSchedule& sched, const PrimeTable& table) {
    check_block(sched, l, "Q_l");
    const auto blocks = block_values(gamma, sched, table);
    return Q_l_value(blocks[static_cast<std::size_t>(l)], k, l, j, sched);
}

BlockBound N_l_bound(const Complex& P_l, const Real& k, long l, const MollifierSchedule& sched) {
    require_negative(k, "N_l_bound");
    check_block(sched, l, "N_l_bound");
    const Precision P = std::max(P_l.precision(), k.precision());
    const Real one(1L, P);
    const Real& alpha = sched.alphas[static_cast<std::size_t>(l)];
    const long ell = sched.ells[static_cast<std::size_t>(l)];
    BlockBound b;
    b.triggered = abs(P_l) * abs(k) > alpha_power(alpha, -0.75) / (one - one / k);
    b.block_abs = abs(truncated_exp_value(P_l * k, ell));
    const Real base = abs(k - 1L) * exp(one / (const_e(P) * (one - one / k))) * alpha_power(alpha, 0.75) * abs(P_l);
    b.bound = pow(base, ell);
    return b;
}

N1Check N1_check(const Complex& P_1, const Real& k, const MollifierSchedule& sched) {
    require_negative(k, "N1_check");
    const Precision P = std::max(P_1.precision(), k.precision());
    const long ell = sched.ells[1];
    const long d = ell + 1;
    const Real one(1L, P);
    const Complex z0 = P_1 * k;
    const double zabs = abs(z0).to_double();
    const double log2_eps = zabs > 0 ? static_cast<double>(d) * std::log2(zabs) -
                                           std::lgamma(static_cast<double>(d) + 1.0) / std::log(2.0) +
                                           zabs / std::log(2.0)
                                     : -1e9;
    const Precision W = P + static_cast<Precision>(std::ceil(std::min(1e6, std::max(0.0, -log2_eps)))) + 64;

    Complex z = z0;
    z.round_to(W);
    const Real zmod = abs(z);
    const Real eps = pow(zmod, d) / factorial(static_cast<unsigned long>(d), W) * exp(zmod);
    const Real block2 = norm(truncated_exp_value(z, ell));
    const Real r = block2 / exp(z.re * 2L) - 1L;
    N1Check c;
    c.in_T = abs(z0) <= alpha_power(sched.alphas[1], -0.75) / (one - one / k);
    c.r = r.rounded(P);
    c.bound = (eps * 2L + eps * eps).rounded(P);
    return c;
}

bool rankin_guard(const MollifierSchedule& sched, const PrimeTable& table, long extra_omega) {
    const Rational one(1);
    for (long j = 1; j <= sched.J; ++j) {
        const long ell = sched.ells[static_cast<std::size_t>(j)];
        for (u64 n : enumerate_block(sched, j, table, ell + extra_omega)) {
            const Factorization f = factorize(n);
            const long omega = static_cast<long>(f.big_omega);
            if (omega <= ell) continue;
            if (coefficient_a_alpha(n, sched, one) != 0) return false;  // b_j must vanish here
            if (ldexp(Real(1L, 64), omega - ell) < 1L) return false;
        }
    }
    return true;
}

}  // namespace zm
