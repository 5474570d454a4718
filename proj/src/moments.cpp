#include "zetamoments/moments.hpp"

#include "zetamoments/parallel.hpp"

#include <cmath>
#include <numbers>

namespace zm {

namespace {

template <class V>
V tree_sum(std::vector<V>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    V left = tree_sum(v, lo, mid);
    left += tree_sum(v, mid, hi);
    return left;
}

void require_simple(const ZetaZero& z) {
    if (!(abs(z.zeta_prime) > kSimpleZeroFloor)) {
        throw SimpleZeroError("zero #" + std::to_string(z.index) + " has |zeta'| at or below the simple-zero floor");
    }
}

Rational exact_rational(const Real& x) {
    if (!x.is_finite()) throw DomainError("value is not finite");
    Rational q;
    mpfr_get_q(q.get_mpq_t(), x.raw());
    return q;
}

}  // namespace

const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::inconclusive: return "inconclusive";
    }
    return "fail";
}

Precision ZeroSet::precision() const {
    if (zeros.empty()) return t_hi.precision();
    return zeros.front().prec_bits;
}

ZeroSet ZeroSet::window(const Real& lo, const Real& hi) const {
    if (lo < t_lo || hi > t_hi || !(lo < hi)) throw DomainError("ZeroSet::window: window not covered by the zero set");
    ZeroSet out{lo, hi, {}};
    for (const auto& z : zeros)
        if (z.gamma > lo && z.gamma <= hi) out.zeros.push_back(z);
    return out;
}

Real pairwise_sum(std::vector<Real> terms, Precision prec) {
    if (terms.empty()) return Real(prec);
    return tree_sum(terms, 0, terms.size());
}

Complex pairwise_sum(std::vector<Complex> terms, Precision prec) {
    if (terms.empty()) return Complex(prec);
    return tree_sum(terms, 0, terms.size());
}

MomentReport compute_Jk(const ZeroSet& zs, const Real& k, unsigned threads) {
    const Precision P = zs.precision() + kGuardBits;
    MomentReport r;
    r.k = k;
    r.t_lo = zs.t_lo;
    r.t_hi = zs.t_hi;
    r.zero_count = static_cast<long>(zs.zeros.size());
    if (k.is_zero()) {
        r.J_value = Real(r.zero_count, P);
    } else {
        if (k < 0L)
            for (const auto& z : zs.zeros) require_simple(z);
        std::vector<Real> terms(zs.zeros.size(), Real(P));
        const Real kw = k.rounded(P);
        parallel_for(zs.zeros.size(), threads, [&](std::size_t i) {
            Complex d = zs.zeros[i].zeta_prime;
            d.round_to(P);
            terms[i] = exp(log(norm(d)) * kw);
        });
        r.J_value = pairwise_sum(std::move(terms), P);
    }
    const Real T = zs.t_hi.rounded(P);
    const Real logT = log(T);
    const Real e = (k.rounded(P) + 1L) * (k.rounded(P) + 1L);
    r.normalized = r.J_value / (T * exp(log(logT) * e));
    r.J_value.round_to(zs.precision());
    r.normalized.round_to(zs.precision());
    if (k == -1L) {
        const Real pi3 = pow(const_pi(P), 3L);
        r.reference_constants.emplace("lower_bound_constant", (Real(3L, P) / (pi3 * 2L)).rounded(zs.precision()));
        r.reference_constants.emplace("conjectured_constant", (Real(3L, P) / pi3).rounded(zs.precision()));
        r.reference_constants.emplace("J_over_T", (r.J_value / T).rounded(zs.precision()));
    }
    return r;
}

HolderReport holder_from_values(const ZeroSet& zs, const Real& k, const std::vector<Complex>& N_rho,
                                const std::vector<Complex>& N_conj, unsigned threads) {
    if (!(k < 0L)) throw DomainError("verify_holder: k must be negative");
    for (const auto& z : zs.zeros) require_simple(z);
    const Precision prec = zs.precision();
    const Precision P = prec + kGuardBits;
    const std::size_t n = zs.zeros.size();
    const Real kw = k.rounded(P);
    const Real one(1L, P);
    const Real e_mixed = one - one / kw;  // 1 - 1/k

    std::vector<Real> a(n, Real(P)), b(n, Real(P)), c(n, Real(P)), dev(n, Real(P));
    parallel_for(n, threads, [&](std::size_t i) {
        Complex d = zs.zeros[i].zeta_prime;
        d.round_to(P);
        Complex Nr = N_rho[i];
        Nr.round_to(P);
        const Real n2 = norm(Nr);
        a[i] = n2;
        b[i] = norm(d) * pow(n2, e_mixed);
        c[i] = exp(log(norm(d)) * kw);
        dev[i] = abs(Nr * N_conj[i] - Complex(n2));
    });
    HolderReport r;
    r.k = k;
    r.zero_count = static_cast<long>(n);
    const Real A = pairwise_sum(a, P);
    const Real B = pairwise_sum(b, P);
    const Real C = pairwise_sum(c, P);
    r.lhs = A;
    r.rhs = n == 0 ? Real(P) : pow(B, -kw / (one - kw)) * pow(C, one / (one - kw));
    r.slack = r.rhs - r.lhs;
    r.tolerance = pow(Real(10L, P), -static_cast<long>(prec / 4));
    Real worst(P);
    for (const auto& v : dev) worst = max(worst, v);
    r.conjugate_deviation = worst;
    if (r.slack >= 0L) {
        r.status = Status::pass;
    } else if (r.slack >= -r.tolerance) {
        r.status = Status::inconclusive;
    } else {
        r.status = Status::fail;
    }
    r.lhs.round_to(prec);
    r.rhs.round_to(prec);
    r.slack.round_to(prec);
    r.tolerance.round_to(prec);
    r.conjugate_deviation.round_to(prec);
    return r;
}

HolderReport verify_holder(const ZeroSet& zs, const Real& k, const MollifierSchedule& sched, const PrimeTable& table,
                           unsigned threads) {
    const std::size_t n = zs.zeros.size();
    const Precision P = table.precision();
    std::vector<Complex> Nr(n, Complex(P)), Nc(n, Complex(P));
    parallel_for(n, threads, [&](std::size_t i) {
        const Real& g = zs.zeros[i].gamma;
        Nr[i] = mollifier_value(block_values(g, sched, table), sched, k.rounded(P));
        Nc[i] = mollifier_value(block_values(-g, sched, table), sched, k.rounded(P));
    });
    HolderReport r = holder_from_values(zs, k, Nr, Nc, threads);
    return r;
}

LandauReport landau_gonek(const ZeroSet& zs, long a, long b, unsigned threads, double budget_constant) {
    if (a < 1 || b < 1) throw DomainError("landau_gonek: a, b must be >= 1");
    const Precision prec = zs.precision();
    const Precision P = prec + kGuardBits;
    LandauReport r;
    r.a = a;
    r.b = b;
    r.t_lo = zs.t_lo;
    r.t_hi = zs.t_hi;
    r.zero_count = static_cast<long>(zs.zeros.size());
    r.budget_constant = budget_constant;

    const Real ratio_log = log(Real(a, P)) - log(Real(b, P));
    std::vector<Complex> terms(zs.zeros.size(), Complex(P));
    parallel_for(zs.zeros.size(), threads, [&](std::size_t i) {
        terms[i] = cis(zs.zeros[i].gamma.rounded(P) * ratio_log);
    });
    r.empirical = pairwise_sum(std::move(terms), P);

    const Real W = (zs.t_hi - zs.t_lo).rounded(P);
    if (a == b) {
        r.main_term = Complex(Real(r.zero_count, P), Real(P));
    } else {
        const long big = std::max(a, b);
        const long small = std::min(a, b);
        const Real lambda = von_mangoldt_ratio(static_cast<u64>(big), static_cast<u64>(small), P);
        const Real q = Real(big, P) / Real(small, P);
        r.main_term = Complex(Real(P), Real(P));
        if (!lambda.is_zero()) r.main_term.re = -(W / (const_pi(P) * 2L)) * lambda / sqrt(q);
    }
    const Real logT = log(zs.t_hi.rounded(P));
    r.error_budget = Real(budget_constant, P) * sqrt(Real(a * b, P)) * logT * logT;
    r.deviation = abs(r.empirical - r.main_term);
    r.empirical.round_to(prec);
    r.main_term.round_to(prec);
    r.error_budget.round_to(prec);
    r.deviation.round_to(prec);
    return r;
}

LogLinear<Rational> convolution_pairing(const RationalPoly& a) {
    LogLinear<Rational> out;
    const auto conv = dirichlet_convolve_vonmangoldt_on_support(a);
    for (const auto& [n, value] : conv) {
        const Rational& an = *a.find(n);
        for (const auto& [p, c] : value) {
            Rational term = c * an / Rational(mpz_class(static_cast<unsigned long>(n)));
            out[p] += term;
        }
    }
    for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
    return out;
}

Rational square_sum(const RationalPoly& a) {
    Rational s = 0;
    for (const auto& [n, c] : a.coeffs()) s += c * c / Rational(mpz_class(static_cast<unsigned long>(n)));
    return s;
}

Rational block_product_formula(const MollifierSchedule& sched, const PrimeTable& table, const Rational& k) {
    Rational product = 1;
    const Rational k2 = k * k;
    for (long j = 1; j <= sched.J; ++j) {
        Rational block = 0;
        for (u64 n : enumerate_block(sched, j, table, sched.ells[static_cast<std::size_t>(j)])) {
            const Factorization f = factorize(n);
            Rational term = f.g_value * f.g_value / Rational(mpz_class(static_cast<unsigned long>(n)));
            for (unsigned i = 0; i < f.big_omega; ++i) term *= k2;
            block += term;
        }
        product *= block;
    }
    return product;
}

Prop4Report prop4_sides(const ZeroSet& zs, const MollifierSchedule& sched, const PrimeTable& table, const Real& k,
                        unsigned threads) {
    if (!(k < 0L)) throw DomainError("prop4_sides: k must be negative");
    const Precision prec = zs.precision();
    const Precision P = table.precision();
    const Rational kq = exact_rational(k);
    const RationalPoly a = build_N(sched, kq, table);

    Prop4Report r;
    r.k = k;
    r.zero_count = static_cast<long>(zs.zeros.size());
    r.support_size = a.size();

    std::vector<Complex> terms(zs.zeros.size(), Complex(P));
    parallel_for(zs.zeros.size(), threads, [&](std::size_t i) {
        const Real& g = zs.zeros[i].gamma;
        terms[i] = mollifier_value(block_values(g, sched, table), sched, k.rounded(P)) *
                   mollifier_value(block_values(-g, sched, table), sched, k.rounded(P));
    });
    const Complex lhs = pairwise_sum(std::move(terms), P);
    r.lhs = lhs.re.rounded(prec);
    r.lhs_imag = lhs.im.rounded(prec);

    r.square_sum_exact = square_sum(a);
    r.main1 = (Real(r.zero_count, P) * Real(r.square_sum_exact, P)).rounded(prec);
    const Real W = (zs.t_hi - zs.t_lo).rounded(P);
    r.main2 = (W / const_pi(P) * log_linear_value(convolution_pairing(a), P)).rounded(prec);
    return r;
}

Real rvm_residual(const Real& T, const EvalConfig& cfg) {
    const Precision P = cfg.prec_bits + kGuardBits;
    const long n = count_zeros(T, cfg);
    const Real t = T.rounded(P);
    const Real two_pi = const_pi(P) * 2L;
    return (Real(n, P) - t / two_pi * log(t / (two_pi * const_e(P)))).rounded(cfg.prec_bits);
}

MeanValueReport mean_value_diagnostic(const ZeroSet& zs, const std::map<u64, Real>& a, long m, unsigned threads) {
    if (m < 1) throw DomainError("mean_value_diagnostic: m must be >= 1");
    const Precision prec = zs.precision();
    const Precision P = prec + kGuardBits;
    std::vector<std::pair<Real, Real>> weights;  // (a(p)/sqrt p, log p)
    Real sum_a_over_p(P), sum_a(P);
    for (const auto& [p, ap] : a) {
        if (ap < 0L) throw DomainError("mean_value_diagnostic: a(p) must be nonnegative");
        if (!is_prime_u64(p)) throw DomainError("mean_value_diagnostic: keys must be primes");
        const Real pr(static_cast<unsigned long>(p), P);
        sum_a_over_p += ap / pr;
        sum_a += ap;
        if (!ap.is_zero()) weights.emplace_back(ap.rounded(P) / sqrt(pr), log(pr));
    }
    std::vector<Real> terms(zs.zeros.size(), Real(P));
    parallel_for(zs.zeros.size(), threads, [&](std::size_t i) {
        const Real g = zs.zeros[i].gamma.rounded(P);
        Complex s(P);
        for (const auto& [w, lp] : weights) s += cis(g * lp) * w;
        terms[i] = pow(norm(s), m);
    });
    MeanValueReport r;
    r.m = m;
    r.lhs = pairwise_sum(std::move(terms), P);
    const Real W = (zs.t_hi - zs.t_lo).rounded(P);
    const Real logW = log(W);
    r.rhs_main = W * logW * factorial(static_cast<unsigned long>(m), P) * pow(sum_a_over_p, m) +
                 logW * logW * pow(sum_a, 2 * m);
    r.ratio = r.rhs_main.is_zero() ? Real(P) : r.lhs / r.rhs_main;
    r.lhs.round_to(prec);
    r.rhs_main.round_to(prec);
    r.ratio.round_to(prec);
    return r;
}

double fit_moment_exponent(const std::vector<MomentReport>& reports) {
    if (reports.size() < 3) throw DomainError("fit_moment_exponent: need at least 3 reports");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i > 0 && !(reports[i].t_hi > reports[i - 1].t_hi)) {
            throw DomainError("fit_moment_exponent: heights must increase");
        }
        const Real T = reports[i].t_hi;
        if (!(reports[i].J_value > 0L)) throw DomainError("fit_moment_exponent: J must be positive");
        x.push_back(log(log(T)).to_double());
        y.push_back(log(reports[i].J_value / T).to_double());
    }
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace zm
