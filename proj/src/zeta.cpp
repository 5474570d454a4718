#include "zetamoments/zeta.hpp"

#include "zetamoments/parallel.hpp"

#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace zm {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

double log2_magnitude(const Real& x) {
    if (x.is_zero()) return -std::numeric_limits<double>::infinity();
    long e = 0;
    const double d = mpfr_get_d_2exp(&e, x.raw(), kRnd);
    return std::log2(std::fabs(d)) + static_cast<double>(e);
}

double log2_magnitude(const Complex& z) { return std::max(log2_magnitude(z.re), log2_magnitude(z.im)); }

std::mutex g_bernoulli_mutex;
std::deque<Rational> g_bernoulli{Rational(1), Rational(-1, 2)};

// B_{2j}/(2j)! at precision P, per thread.
const std::vector<Real>& em_coefficients(Precision P, unsigned count) {
    thread_local std::map<Precision, std::vector<Real>> cache;
    auto& v = cache[P];
    while (v.size() <= count) {
        const unsigned j = static_cast<unsigned>(v.size());
        if (j == 0) {
            v.emplace_back(P);
            continue;
        }
        mpz_class fac;
        mpz_fac_ui(fac.get_mpz_t(), 2 * j);
        v.emplace_back(Rational(bernoulli_even(j) / fac), P);
    }
    return v;
}

// B_{2j}/(2j(2j-1)) for the Stirling series, per thread.
const std::vector<Real>& stirling_coefficients(Precision P, unsigned count) {
    thread_local std::map<Precision, std::vector<Real>> cache;
    auto& v = cache[P];
    while (v.size() <= count) {
        const unsigned j = static_cast<unsigned>(v.size());
        if (j == 0) {
            v.emplace_back(P);
            continue;
        }
        Rational c = bernoulli_even(j) / Rational(2 * j * (2 * j - 1));
        v.emplace_back(c, P);
    }
    return v;
}

const std::vector<double>& em_coefficients_double() {
    static const std::vector<double> v = [] {
        std::vector<double> out{0.0};
        for (unsigned j = 1; j <= 40; ++j) {
            mpz_class fac;
            mpz_fac_ui(fac.get_mpz_t(), 2 * j);
            out.push_back(Rational(bernoulli_even(j) / fac).get_d());
        }
        return out;
    }();
    return v;
}

const std::vector<double>& stirling_coefficients_double() {
    static const std::vector<double> v = [] {
        std::vector<double> out{0.0};
        for (unsigned j = 1; j <= 12; ++j) out.push_back(Rational(bernoulli_even(j) / Rational(2 * j * (2 * j - 1))).get_d());
        return out;
    }();
    return v;
}

// Smallest prime factor table for 2..n.
std::vector<std::uint32_t> smallest_factors(std::size_t n) {
    std::vector<std::uint32_t> spf(n + 1, 0);
    for (std::size_t i = 2; i <= n; ++i) {
        if (spf[i] != 0) continue;
        for (std::size_t j = i; j <= n; j += i)
            if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

void check_argument(const Complex& s) {
    if (!s.re.is_finite() || !s.im.is_finite()) throw DomainError("zeta: non-finite argument");
    if (s.im.is_zero() && s.re == 1L) throw PoleError("zeta: pole at s = 1");
    if (std::fabs(s.im.to_double()) > kMaxHeight) {
        throw RangeError("zeta: |Im s| exceeds supported height " + std::to_string(kMaxHeight));
    }
}

// Euler-Maclaurin at working precision P:
//   zeta(s) = sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2
//             + sum_j B_{2j}/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1}
// The derivative differentiates every term analytically.
ZetaValues euler_maclaurin(const Complex& s_in, Precision P, const EvalConfig& cfg, bool with_derivative) {
    check_argument(s_in);
    Complex s = s_in;
    s.round_to(P);
    const double height = std::fabs(s.im.to_double());
    const double radius = std::hypot(s.re.to_double(), height);
    long N = std::max<long>({static_cast<long>(std::ceil(cfg.cutoff_multiplier * height)),
                             static_cast<long>(P / 4), static_cast<long>(std::ceil(radius / 2.0)), 8L});
    const unsigned max_terms = cfg.euler_maclaurin_terms;
    const double target = -static_cast<double>(P);

    for (;;) {
        const auto& coef = em_coefficients(P, max_terms);
        const auto spf = smallest_factors(static_cast<std::size_t>(N));
        std::vector<Complex> pw(static_cast<std::size_t>(N) + 1, Complex(P));
        std::vector<Real> logn(static_cast<std::size_t>(N) + 1, Real(P));

        Complex sum(P), dsum(P);
        mpfr_set_ui(sum.re.raw(), 1, kRnd);  // n = 1
        mpfr_set_ui(pw[1].re.raw(), 1, kRnd);
        Real tmp(P);
        for (long n = 2; n <= N; ++n) {
            const auto un = static_cast<std::size_t>(n);
            const std::size_t p = spf[un];
            if (p == un) {
                mpfr_set_ui(logn[un].raw(), static_cast<unsigned long>(n), kRnd);
                mpfr_log(logn[un].raw(), logn[un].raw(), kRnd);
                pw[un] = inverse_power(logn[un], s);
            } else {
                const std::size_t m = un / p;
                mpfr_add(logn[un].raw(), logn[p].raw(), logn[m].raw(), kRnd);
                const Complex& a = pw[p];
                const Complex& b = pw[m];
                mpfr_fmms(pw[un].re.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), kRnd);
                mpfr_fmma(pw[un].im.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), kRnd);
            }
            if (n == N) break;
            mpfr_add(sum.re.raw(), sum.re.raw(), pw[un].re.raw(), kRnd);
            mpfr_add(sum.im.raw(), sum.im.raw(), pw[un].im.raw(), kRnd);
            if (with_derivative) {
                mpfr_mul(tmp.raw(), logn[un].raw(), pw[un].re.raw(), kRnd);
                mpfr_sub(dsum.re.raw(), dsum.re.raw(), tmp.raw(), kRnd);
                mpfr_mul(tmp.raw(), logn[un].raw(), pw[un].im.raw(), kRnd);
                mpfr_sub(dsum.im.raw(), dsum.im.raw(), tmp.raw(), kRnd);
            }
        }

        const Complex& x = pw[static_cast<std::size_t>(N)];  // N^-s
        const Real& logN = logn[static_cast<std::size_t>(N)];
        const Complex one(Real(1L, P), Real(P));
        const Complex inv_sm1 = one / (s - Real(1L, P));
        const Complex u = x * N;  // N^{1-s}
        const Complex head = u * inv_sm1;
        sum += head;
        sum += x / Real(2L, P);
        if (with_derivative) {
            dsum -= head * logN;
            dsum -= head * inv_sm1;
            dsum -= x * logN / Real(2L, P);
        }

        Complex Pj = s;
        Complex dPj = one;
        Complex pwj = x / Real(N, P);
        const Real invN2 = Real(1L, P) / (Real(N, P) * Real(N, P));
        double prev = std::numeric_limits<double>::infinity();
        bool converged = false;
        for (unsigned j = 1; j <= max_terms; ++j) {
            const Complex term = Pj * pwj * coef[j];
            sum += term;
            double mag = log2_magnitude(term);
            if (with_derivative) {
                const Complex dterm = (dPj - Pj * logN) * pwj * coef[j];
                dsum += dterm;
                mag = std::max(mag, log2_magnitude(dterm));
            }
            if (mag < target) {
                converged = true;
                break;
            }
            if (j >= 3 && mag > prev) break;
            prev = mag;
            const Real a = Real(static_cast<long>(2 * j - 1), P);
            const Complex q = (s + a) * (s + (a + 1L));
            if (with_derivative) {
                const Complex dq = s * 2L + Real(static_cast<long>(4 * j - 1), P);
                dPj = dPj * q + Pj * dq;
            }
            Pj *= q;
            pwj *= invN2;
        }
        if (converged) return {std::move(sum), std::move(dsum)};
        N = N + N / 2 + 1;
    }
}

// Im log Gamma(1/4 + it/2) by Stirling's series after shifting the
// argument to modulus >= R.
Real im_log_gamma_quarter(const Real& t, Precision P) {
    const Real half_t = t / 2L;
    const double radius = static_cast<double>(P) / 3.0 + 10.0;
    const double modulus = std::hypot(0.25, half_t.to_double());
    const long shift = modulus >= radius ? 0 : static_cast<long>(std::ceil(radius - modulus));

    Real arg_sum(P);
    for (long i = 0; i < shift; ++i) arg_sum += atan2(half_t, Real(0.25, P) + i);

    const Complex w(Real(0.25, P) + shift, half_t);
    const Complex lw = log(w);
    // Im[(w - 1/2) log w - w]
    Real result = (w.re - Real(0.5, P)) * lw.im + w.im * lw.re - w.im;

    const Complex winv = Complex(Real(1L, P), Real(P)) / w;
    const Complex winv2 = winv * winv;
    Complex power = winv;
    const double target = -static_cast<double>(P) - 4.0;
    const unsigned max_terms = 120;
    const auto& coef = stirling_coefficients(P, max_terms);
    for (unsigned j = 1; j <= max_terms; ++j) {
        const Real term = power.im * coef[j];
        result += term;
        if (log2_magnitude(term) < target + log2_magnitude(result)) break;
        power *= winv2;
    }
    result -= arg_sum;
    return result;
}

Real theta_at(const Real& t_in, Precision P) {
    if (t_in < 1L) throw RangeError("riemann_siegel_theta: t must be >= 1");
    Real t = t_in.rounded(P);
    Real out = im_log_gamma_quarter(t, P);
    out -= t / 2L * log(const_pi(P));
    return out;
}

Real hardy_z_at(const Real& t, Precision P, const EvalConfig& cfg) {
    const Real th = theta_at(t, P);
    const Complex s(Real(0.5, P), t.rounded(P));
    const Complex z = euler_maclaurin(s, P, cfg, false).value;
    Real sn(P), cs(P);
    sin_cos(th, sn, cs);
    return z.re * cs - z.im * sn;
}

Precision working_precision(const EvalConfig& cfg) {
    cfg.validate();
    return cfg.prec_bits + kGuardBits;
}

// Argument-principle count. theta is taken at high precision and S(T) by
// tracking arg zeta from 2 + iT to 1/2 + iT with adaptive steps.
long count_zeros_impl(const Real& T, const EvalConfig& cfg) {
    const Precision P = working_precision(cfg);
    if (T < 5L) throw DomainError("count_zeros: T must be >= 5");
    if (T > kMaxHeight) throw RangeError("count_zeros: T exceeds supported height");
    const double th = theta_at(T, P).to_double();
    const double t = T.to_double();

    std::complex<double> prev = fast::zeta(2.0, t);
    double total_arg = std::arg(prev);
    double sigma = 2.0;
    double h = 0.125;
    while (sigma > 0.5) {
        const double next = std::max(0.5, sigma - h);
        const double mid = 0.5 * (sigma + next);
        const auto zm = fast::zeta(mid, t);
        const auto zn = fast::zeta(next, t);
        const double d1 = std::arg(zm / prev);
        const double d2 = std::arg(zn / zm);
        const double d = std::arg(zn / prev);
        const bool smooth = std::fabs(d1) < 0.6 && std::fabs(d2) < 0.6 && std::fabs(d1 + d2 - d) < 1e-6;
        if (!smooth && h > 1e-9) {
            h /= 2;
            continue;
        }
        total_arg += d1 + d2;
        prev = zn;
        sigma = next;
        if (smooth) h = std::min(0.25, h * 1.5);
    }
    std::ostringstream where;
    where.precision(17);
    where << t;
    if (std::abs(prev) < 1e-9) throw AmbiguousCountError("count_zeros: T = " + where.str() + " is too close to a zero ordinate");
    const double x = th / std::numbers::pi + 1.0 + total_arg / std::numbers::pi;
    const double n = std::nearbyint(x);
    if (std::fabs(x - n) > 0.1) throw AmbiguousCountError("count_zeros: non-integral count near T = " + where.str());
    return static_cast<long>(n);
}

struct Bracket {
    double a, b;
    double fa, fb;
};

// Chooses chunk boundaries on the Gram grid.
std::vector<double> gram_points(double lo, double hi) {
    std::vector<double> out;
    const double th_lo = fast::theta(lo);
    long n = static_cast<long>(std::floor(th_lo / std::numbers::pi)) + 1;
    double t = lo;
    for (;; ++n) {
        const double target = static_cast<double>(n) * std::numbers::pi;
        for (int it = 0; it < 50; ++it) {
            const double deriv = 0.5 * std::log(t / (2 * std::numbers::pi));
            const double step = (fast::theta(t) - target) / deriv;
            t -= step;
            if (std::fabs(step) < 1e-12 * t) break;
        }
        if (t >= hi) break;
        if (t > lo) out.push_back(t);
    }
    return out;
}

double refine_double(Bracket br) {
    // bisection to width 1e-3, then Illinois
    while (br.b - br.a > 1e-3) {
        const double m = 0.5 * (br.a + br.b);
        const double fm = fast::hardy_z(m);
        if (fm == 0.0) return m;
        if ((fm < 0) == (br.fa < 0)) {
            br.a = m;
            br.fa = fm;
        } else {
            br.b = m;
            br.fb = fm;
        }
    }
    int side = 0;
    for (int it = 0; it < 100 && br.b - br.a > 1e-13 * br.b; ++it) {
        const double c = (br.a * br.fb - br.b * br.fa) / (br.fb - br.fa);
        const double fc = fast::hardy_z(c);
        if (fc == 0.0) return c;
        if ((fc < 0) == (br.fb < 0)) {
            br.b = c;
            br.fb = fc;
            if (side == -1) br.fa /= 2;
            side = -1;
        } else {
            br.a = c;
            br.fa = fc;
            if (side == 1) br.fb /= 2;
            side = 1;
        }
    }
    return std::fabs(br.fa) < std::fabs(br.fb) ? br.a : br.b;
}

ZetaZero refine_zero(const Bracket& br, long index, const EvalConfig& cfg) {
    const Precision P = working_precision(cfg);
    const double guess = refine_double(br);
    Real t(guess, P);
    const Real tol = ldexp(Real(1L, P), -static_cast<long>(cfg.prec_bits) - 16) * std::max(1.0, guess);
    Complex derivative(P);
    bool converged = false;
    for (int it = 0; it < 40; ++it) {
        const Complex s(Real(0.5, P), t);
        const ZetaValues v = euler_maclaurin(s, P, cfg, true);
        const Real delta = -(v.value / v.derivative).im;
        t += delta;
        derivative = v.derivative;
        if (abs(delta) < tol) {
            converged = true;
            break;
        }
        if (std::fabs(t.to_double() - guess) > 1e-4) break;
    }
    if (!converged || t <= br.a || t >= br.b) {
        throw IncompleteEnumerationError(br.a, br.b, 1, 0);
    }
    const long half = static_cast<long>((cfg.prec_bits + 1) / 2);
    Real eps = ldexp(Real(1L, P), -half);
    const Real z_minus = hardy_z_at(t - eps, P, cfg);
    const Real z_plus = hardy_z_at(t + eps, P, cfg);
    if (z_minus.sign() * z_plus.sign() >= 0) throw IncompleteEnumerationError(br.a, br.b, 1, 0);

    ZetaZero z;
    z.index = index;
    z.gamma = t.rounded(cfg.prec_bits);
    z.gamma_error = eps.rounded(cfg.prec_bits);
    z.zeta_prime = derivative;
    z.zeta_prime.round_to(cfg.prec_bits);
    z.prec_bits = cfg.prec_bits;
    return z;
}

// Sign-change brackets for one chunk; the grid is refined uniformly until
// the number of sign changes reaches the expected count.
std::vector<Bracket> isolate(const std::vector<double>& grid0, long expected) {
    std::vector<double> grid = grid0;
    std::vector<double> values;
    values.reserve(grid.size());
    for (double g : grid) values.push_back(fast::hardy_z(g));
    for (int depth = 0;; ++depth) {
        std::vector<Bracket> found;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            if ((values[i] < 0) != (values[i + 1] < 0)) found.push_back({grid[i], grid[i + 1], values[i], values[i + 1]});
        }
        const long count = static_cast<long>(found.size());
        if (count == expected) return found;
        if (count > expected || depth >= 11) {
            throw IncompleteEnumerationError(grid.front(), grid.back(), expected, count);
        }
        std::vector<double> g2, v2;
        g2.reserve(2 * grid.size());
        v2.reserve(2 * grid.size());
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            const double m = 0.5 * (grid[i] + grid[i + 1]);
            g2.push_back(grid[i]);
            v2.push_back(values[i]);
            g2.push_back(m);
            v2.push_back(fast::hardy_z(m));
        }
        g2.push_back(grid.back());
        v2.push_back(values.back());
        grid = std::move(g2);
        values = std::move(v2);
    }
}

long count_with_nudge(double& b, double limit, const EvalConfig& cfg) {
    for (int k = 0; k < 40; ++k) {
        try {
            return count_zeros_impl(Real(b, 64), cfg);
        } catch (const AmbiguousCountError&) {
            const double moved = b + 0.0137;
            if (moved >= limit) throw;
            b = moved;
        }
    }
    throw AmbiguousCountError("count_zeros: no unambiguous chunk boundary found");
}

}  // namespace

void EvalConfig::validate() const {
    if (prec_bits < 64) throw DomainError("EvalConfig: prec_bits must be >= 64");
    if (euler_maclaurin_terms < 4) throw DomainError("EvalConfig: euler_maclaurin_terms must be >= 4");
    if (!(cutoff_multiplier > 0.0)) throw DomainError("EvalConfig: cutoff_multiplier must be positive");
}

IncompleteEnumerationError::IncompleteEnumerationError(double lo_, double hi_, long expected_, long found_)
    : std::runtime_error([&] {
          std::ostringstream os;
          os.precision(15);
          os << "find_zeros: incomplete enumeration on (" << lo_ << ", " << hi_ << "]: expected " << expected_
             << " zero(s), isolated " << found_;
          return os.str();
      }()),
      lo(lo_),
      hi(hi_),
      expected(expected_),
      found(found_) {}

const Rational& bernoulli_even(unsigned j) {
    std::lock_guard lock(g_bernoulli_mutex);
    const std::size_t m = 2 * static_cast<std::size_t>(j);
    while (g_bernoulli.size() <= m) {
        const unsigned long n = g_bernoulli.size();
        if (n % 2 == 1) {
            g_bernoulli.emplace_back(0);
            continue;
        }
        // B_n = -1/(n+1) sum_{k<n} C(n+1, k) B_k
        Rational acc = 0;
        for (unsigned long k = 0; k < n; ++k) {
            if (k % 2 == 1 && k > 1) continue;
            mpz_class c;
            mpz_bin_uiui(c.get_mpz_t(), n + 1, k);
            acc += Rational(c) * g_bernoulli[k];
        }
        Rational b = -acc / Rational(static_cast<long>(n + 1));
        b.canonicalize();
        g_bernoulli.push_back(b);
    }
    return g_bernoulli[m];
}

ZetaValues zeta_with_derivative(const Complex& s, const EvalConfig& cfg) {
    ZetaValues v = euler_maclaurin(s, working_precision(cfg), cfg, true);
    v.value.round_to(cfg.prec_bits);
    v.derivative.round_to(cfg.prec_bits);
    return v;
}

Complex zeta(const Complex& s, const EvalConfig& cfg) {
    Complex v = euler_maclaurin(s, working_precision(cfg), cfg, false).value;
    v.round_to(cfg.prec_bits);
    return v;
}

Complex zeta_prime(const Complex& s, const EvalConfig& cfg) {
    Complex v = euler_maclaurin(s, working_precision(cfg), cfg, true).derivative;
    v.round_to(cfg.prec_bits);
    return v;
}

Real riemann_siegel_theta(const Real& t, const EvalConfig& cfg) {
    return theta_at(t, working_precision(cfg)).rounded(cfg.prec_bits);
}

Real hardy_z(const Real& t, const EvalConfig& cfg) {
    if (t < 1L) throw RangeError("hardy_z: t must be >= 1");
    return hardy_z_at(t, working_precision(cfg), cfg).rounded(cfg.prec_bits);
}

long count_zeros(const Real& T, const EvalConfig& cfg) { return count_zeros_impl(T, cfg); }
long count_zeros(double T, const EvalConfig& cfg) { return count_zeros_impl(Real(T, 64), cfg); }

std::vector<ZetaZero> find_zeros(const Real& t_lo, const Real& t_hi, const EvalConfig& cfg, unsigned threads) {
    cfg.validate();
    if (t_lo < 0L || !(t_lo < t_hi)) throw DomainError("find_zeros: need 0 <= t_lo < t_hi");
    if (t_hi > kMaxHeight) throw RangeError("find_zeros: t_hi exceeds supported height");
    constexpr double kFloor = 10.0;  // no ordinate lies below 14
    if (t_hi <= kFloor) return {};
    const double lo = std::max(t_lo.to_double(), kFloor);
    const double hi = t_hi.to_double();

    const long n_lo = count_zeros_impl(t_lo < kFloor ? Real(kFloor, 64) : t_lo, cfg);
    const long n_hi = count_zeros_impl(t_hi, cfg);

    std::vector<double> gram = gram_points(lo, hi);
    constexpr std::size_t kChunk = 16;
    std::vector<double> bounds{lo};
    for (std::size_t i = kChunk; i < gram.size(); i += kChunk) bounds.push_back(gram[i]);
    bounds.push_back(hi);

    const std::size_t chunks = bounds.size() - 1;
    std::vector<long> counts(bounds.size());
    counts.front() = n_lo;
    counts.back() = n_hi;
    parallel_for(bounds.size() - 2, threads, [&](std::size_t i) {
        const std::size_t b = i + 1;
        counts[b] = count_with_nudge(bounds[b], bounds[b + 1], cfg);
    });

    std::vector<std::vector<Bracket>> brackets(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        const long expected = counts[c + 1] - counts[c];
        if (expected < 0) throw IncompleteEnumerationError(bounds[c], bounds[c + 1], expected, 0);
        std::vector<double> grid{bounds[c]};
        for (double g : gram)
            if (g > bounds[c] && g < bounds[c + 1]) grid.push_back(g);
        grid.push_back(bounds[c + 1]);
        brackets[c] = isolate(grid, expected);
    });

    std::vector<Bracket> all;
    for (auto& v : brackets) all.insert(all.end(), v.begin(), v.end());
    std::vector<ZetaZero> zeros(all.size());
    parallel_for(all.size(), threads, [&](std::size_t i) {
        zeros[i] = refine_zero(all[i], n_lo + static_cast<long>(i) + 1, cfg);
    });
    if (static_cast<long>(zeros.size()) != n_hi - n_lo) {
        throw IncompleteEnumerationError(lo, hi, n_hi - n_lo, static_cast<long>(zeros.size()));
    }
    for (std::size_t i = 1; i < zeros.size(); ++i) {
        if (!(zeros[i - 1].gamma < zeros[i].gamma)) {
            throw IncompleteEnumerationError(all[i - 1].a, all[i].b, 2, 1);
        }
    }
    return zeros;
}

std::vector<ZetaZero> find_zeros(double t_lo, double t_hi, const EvalConfig& cfg, unsigned threads) {
    return find_zeros(Real(t_lo, 64), Real(t_hi, 64), cfg, threads);
}

namespace fast {

std::complex<double> zeta(double sigma, double t) {
    const std::complex<double> s(sigma, t);
    const double height = std::fabs(t);
    long N = std::max<long>(12, static_cast<long>(std::ceil(0.5 * height)) + 12);
    const auto& coef = em_coefficients_double();
    for (;;) {
        std::complex<double> sum = 1.0;
        for (long n = 2; n < N; ++n) {
            const double ln = std::log(static_cast<double>(n));
            sum += std::polar(std::exp(-sigma * ln), -t * ln);
        }
        const double lN = std::log(static_cast<double>(N));
        const std::complex<double> x = std::polar(std::exp(-sigma * lN), -t * lN);
        sum += static_cast<double>(N) * x / (s - 1.0) + 0.5 * x;
        std::complex<double> Pj = s;
        std::complex<double> pwj = x / static_cast<double>(N);
        const double invN2 = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
        double prev = std::numeric_limits<double>::infinity();
        bool converged = false;
        for (std::size_t j = 1; j < coef.size(); ++j) {
            const std::complex<double> term = coef[j] * Pj * pwj;
            sum += term;
            const double mag = std::abs(term);
            if (mag < 1e-17 * std::max(1.0, std::abs(sum))) {
                converged = true;
                break;
            }
            if (j >= 3 && mag > prev) break;
            prev = mag;
            const double a = static_cast<double>(2 * j - 1);
            Pj *= (s + a) * (s + a + 1.0);
            pwj *= invN2;
        }
        if (converged) return sum;
        N = N + N / 2 + 1;
    }
}

double theta(double t) {
    const std::complex<double> z(0.25, 0.5 * t);
    const double modulus = std::abs(z);
    const long shift = modulus >= 12.0 ? 0 : static_cast<long>(std::ceil(12.0 - modulus));
    double arg_sum = 0.0;
    for (long i = 0; i < shift; ++i) arg_sum += std::atan2(0.5 * t, 0.25 + static_cast<double>(i));
    const std::complex<double> w = z + static_cast<double>(shift);
    const std::complex<double> lw = std::log(w);
    double result = ((w - 0.5) * lw - w).imag();
    const std::complex<double> winv = 1.0 / w;
    const std::complex<double> winv2 = winv * winv;
    std::complex<double> power = winv;
    const auto& coef = stirling_coefficients_double();
    for (std::size_t j = 1; j < coef.size(); ++j) {
        result += coef[j] * power.imag();
        power *= winv2;
    }
    return result - arg_sum - 0.5 * t * std::log(std::numbers::pi);
}

double hardy_z(double t) {
    const std::complex<double> z = fast::zeta(0.5, t);
    const double th = theta(t);
    return z.real() * std::cos(th) - z.imag() * std::sin(th);
}

}  // namespace fast

}  // namespace zm
