#include "zetamoments/real.hpp"

#include <climits>
#include <cstdlib>
#include <stdexcept>

namespace zm {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

Precision join(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Real::Real(Precision prec) {
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

Real::Real(double v, Precision prec) {
    mpfr_init2(value_, prec);
    mpfr_set_d(value_, v, kRnd);
}

Real::Real(long v, Precision prec) {
    mpfr_init2(value_, prec);
    mpfr_set_si(value_, v, kRnd);
}

Real::Real(unsigned long v, Precision prec) {
    mpfr_init2(value_, prec);
    mpfr_set_ui(value_, v, kRnd);
}

Real::Real(const mpq_class& q, Precision prec) {
    mpfr_init2(value_, prec);
    mpfr_set_q(value_, q.get_mpq_t(), kRnd);
}

Real Real::parse(std::string_view text, Precision prec) {
    Real out(prec);
    std::string buffer(text);
    char* end = nullptr;
    if (mpfr_strtofr(out.value_, buffer.c_str(), &end, 10, kRnd), end == buffer.c_str() || *end != '\0') {
        throw std::invalid_argument("not a decimal number: '" + buffer + "'");
    }
    return out;
}

Real::Real(const Real& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, kRnd);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(value_, other.precision());
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, kRnd);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this != &other) mpfr_swap(value_, other.value_);
    return *this;
}

Real& Real::operator=(double v) {
    mpfr_set_d(value_, v, kRnd);
    return *this;
}

Real& Real::operator=(long v) {
    mpfr_set_si(value_, v, kRnd);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real& Real::round_to(Precision prec) {
    mpfr_prec_round(value_, prec, kRnd);
    return *this;
}

Real Real::rounded(Precision prec) const {
    Real out(prec);
    mpfr_set(out.value_, value_, kRnd);
    return out;
}

double Real::to_double() const noexcept { return mpfr_get_d(value_, kRnd); }

long Real::to_long() const {
    if (!mpfr_fits_slong_p(value_, MPFR_RNDZ)) throw std::overflow_error("Real::to_long: out of range");
    return mpfr_get_si(value_, MPFR_RNDZ);
}

std::string Real::to_string() const { return to_string(0); }

std::string Real::to_string(std::size_t digits) const {
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(value_)) return mpfr_signbit(value_) ? "-0" : "0";
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, digits, value_, kRnd);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string out;
    if (mant.front() == '-') {
        out.push_back('-');
        mant.erase(0, 1);
    }
    while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
    out.push_back(mant.front());
    if (mant.size() > 1) {
        out.push_back('.');
        out.append(mant, 1, std::string::npos);
    }
    const long e = static_cast<long>(exp10) - 1;
    out.push_back('e');
    out.push_back(e < 0 ? '-' : '+');
    out += std::to_string(std::labs(e));
    return out;
}

Real& Real::operator+=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), kRnd);
    mpfr_add(value_, value_, o.value_, kRnd);
    return *this;
}
Real& Real::operator-=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), kRnd);
    mpfr_sub(value_, value_, o.value_, kRnd);
    return *this;
}
Real& Real::operator*=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), kRnd);
    mpfr_mul(value_, value_, o.value_, kRnd);
    return *this;
}
Real& Real::operator/=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), kRnd);
    mpfr_div(value_, value_, o.value_, kRnd);
    return *this;
}
Real& Real::operator+=(long o) {
    mpfr_add_si(value_, value_, o, kRnd);
    return *this;
}
Real& Real::operator-=(long o) {
    mpfr_sub_si(value_, value_, o, kRnd);
    return *this;
}
Real& Real::operator*=(long o) {
    mpfr_mul_si(value_, value_, o, kRnd);
    return *this;
}
Real& Real::operator/=(long o) {
    mpfr_div_si(value_, value_, o, kRnd);
    return *this;
}
Real& Real::operator*=(double o) {
    mpfr_mul_d(value_, value_, o, kRnd);
    return *this;
}

Real Real::operator-() const {
    Real out(precision());
    mpfr_neg(out.value_, value_, kRnd);
    return out;
}

Real operator+(const Real& a, const Real& b) {
    Real out(join(a, b));
    mpfr_add(out.raw(), a.raw(), b.raw(), kRnd);
    return out;
}
Real operator-(const Real& a, const Real& b) {
    Real out(join(a, b));
    mpfr_sub(out.raw(), a.raw(), b.raw(), kRnd);
    return out;
}
Real operator*(const Real& a, const Real& b) {
    Real out(join(a, b));
    mpfr_mul(out.raw(), a.raw(), b.raw(), kRnd);
    return out;
}
Real operator/(const Real& a, const Real& b) {
    Real out(join(a, b));
    mpfr_div(out.raw(), a.raw(), b.raw(), kRnd);
    return out;
}
Real operator+(const Real& a, long b) {
    Real out(a.precision());
    mpfr_add_si(out.raw(), a.raw(), b, kRnd);
    return out;
}
Real operator-(const Real& a, long b) {
    Real out(a.precision());
    mpfr_sub_si(out.raw(), a.raw(), b, kRnd);
    return out;
}
Real operator*(const Real& a, long b) {
    Real out(a.precision());
    mpfr_mul_si(out.raw(), a.raw(), b, kRnd);
    return out;
}
Real operator/(const Real& a, long b) {
    Real out(a.precision());
    mpfr_div_si(out.raw(), a.raw(), b, kRnd);
    return out;
}
Real operator+(long a, const Real& b) { return b + a; }
Real operator-(long a, const Real& b) {
    Real out(b.precision());
    mpfr_si_sub(out.raw(), a, b.raw(), kRnd);
    return out;
}
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(long a, const Real& b) {
    Real out(b.precision());
    mpfr_si_div(out.raw(), a, b.raw(), kRnd);
    return out;
}
Real operator*(const Real& a, double b) {
    Real out(a.precision());
    mpfr_mul_d(out.raw(), a.raw(), b, kRnd);
    return out;
}
Real operator*(double a, const Real& b) { return b * a; }
Real operator+(const Real& a, double b) {
    Real out(a.precision());
    mpfr_add_d(out.raw(), a.raw(), b, kRnd);
    return out;
}
Real operator-(const Real& a, double b) {
    Real out(a.precision());
    mpfr_sub_d(out.raw(), a.raw(), b, kRnd);
    return out;
}

namespace {
std::partial_ordering from_cmp(int c, bool unordered) {
    if (unordered) return std::partial_ordering::unordered;
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}
}  // namespace

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
std::partial_ordering operator<=>(const Real& a, const Real& b) {
    return from_cmp(mpfr_cmp(a.raw(), b.raw()), mpfr_unordered_p(a.raw(), b.raw()) != 0);
}
bool operator==(const Real& a, double b) { return (a <=> b) == 0; }
std::partial_ordering operator<=>(const Real& a, double b) {
    return from_cmp(mpfr_cmp_d(a.raw(), b), mpfr_nan_p(a.raw()) != 0 || b != b);
}
bool operator==(const Real& a, long b) { return (a <=> b) == 0; }
std::partial_ordering operator<=>(const Real& a, long b) {
    return from_cmp(mpfr_cmp_si(a.raw(), b), mpfr_nan_p(a.raw()) != 0);
}

#define ZM_UNARY(name, fn)                              \
    Real name(const Real& x) {                          \
        Real out(x.precision());                        \
        fn(out.raw(), x.raw(), kRnd);                   \
        return out;                                     \
    }

ZM_UNARY(abs, mpfr_abs)
ZM_UNARY(sqrt, mpfr_sqrt)
ZM_UNARY(exp, mpfr_exp)
ZM_UNARY(expm1, mpfr_expm1)
ZM_UNARY(log, mpfr_log)
ZM_UNARY(log1p, mpfr_log1p)
ZM_UNARY(sin, mpfr_sin)
ZM_UNARY(cos, mpfr_cos)

#undef ZM_UNARY

void sin_cos(const Real& x, Real& s, Real& c) {
    if (s.precision() != x.precision()) mpfr_set_prec(s.raw(), x.precision());
    if (c.precision() != x.precision()) mpfr_set_prec(c.raw(), x.precision());
    mpfr_sin_cos(s.raw(), c.raw(), x.raw(), kRnd);
}

Real atan2(const Real& y, const Real& x) {
    Real out(join(y, x));
    mpfr_atan2(out.raw(), y.raw(), x.raw(), kRnd);
    return out;
}

Real pow(const Real& base, const Real& exponent) {
    Real out(join(base, exponent));
    mpfr_pow(out.raw(), base.raw(), exponent.raw(), kRnd);
    return out;
}

Real pow(const Real& base, long exponent) {
    Real out(base.precision());
    mpfr_pow_si(out.raw(), base.raw(), exponent, kRnd);
    return out;
}

Real floor(const Real& x) {
    Real out(x.precision());
    mpfr_floor(out.raw(), x.raw());
    return out;
}

Real ceil(const Real& x) {
    Real out(x.precision());
    mpfr_ceil(out.raw(), x.raw());
    return out;
}

Real ldexp(const Real& x, long e) {
    Real out(x.precision());
    mpfr_mul_2si(out.raw(), x.raw(), e, kRnd);
    return out;
}

Real min(const Real& a, const Real& b) { return (b < a) ? b : a; }
Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }

Real factorial(unsigned long n, Precision prec) {
    Real out(prec);
    mpfr_fac_ui(out.raw(), n, kRnd);
    return out;
}

Real log_factorial(unsigned long n, Precision prec) {
    Real x(static_cast<unsigned long>(n + 1), prec);
    Real out(prec);
    mpfr_lngamma(out.raw(), x.raw(), kRnd);
    return out;
}

Real const_pi(Precision prec) {
    Real out(prec);
    mpfr_const_pi(out.raw(), kRnd);
    return out;
}

Real const_euler(Precision prec) {
    Real out(prec);
    mpfr_const_euler(out.raw(), kRnd);
    return out;
}

Real const_log2(Precision prec) {
    Real out(prec);
    mpfr_const_log2(out.raw(), kRnd);
    return out;
}

Real const_e(Precision prec) { return exp(Real(1L, prec)); }

long ceil_to_long(const Real& x) {
    if (!x.is_finite()) throw std::domain_error("ceil_to_long: non-finite value");
    Real c = ceil(x);
    return c.to_long();
}

// ---------------------------------------------------------------------------
// Complex

Complex& Complex::round_to(Precision prec) {
    re.round_to(prec);
    im.round_to(prec);
    return *this;
}

Complex& Complex::operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o) {
    *this = *this * o;
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    *this = *this / o;
    return *this;
}

Complex& Complex::operator*=(const Real& o) {
    re *= o;
    im *= o;
    return *this;
}

Complex& Complex::operator/=(const Real& o) {
    re /= o;
    im /= o;
    return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re + b.re, a.im + b.im); }
Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re - b.re, a.im - b.im); }

Complex operator*(const Complex& a, const Complex& b) {
    const Precision p = std::max(a.precision(), b.precision());
    Complex out(p);
    Real t(p);
    mpfr_mul(out.re.raw(), a.re.raw(), b.re.raw(), kRnd);
    mpfr_mul(t.raw(), a.im.raw(), b.im.raw(), kRnd);
    mpfr_sub(out.re.raw(), out.re.raw(), t.raw(), kRnd);
    mpfr_mul(out.im.raw(), a.re.raw(), b.im.raw(), kRnd);
    mpfr_mul(t.raw(), a.im.raw(), b.re.raw(), kRnd);
    mpfr_add(out.im.raw(), out.im.raw(), t.raw(), kRnd);
    return out;
}

Complex operator/(const Complex& a, const Complex& b) {
    const Real d = norm(b);
    Complex num = a * conj(b);
    num.re /= d;
    num.im /= d;
    return num;
}

Complex operator*(const Complex& a, const Real& b) { return Complex(a.re * b, a.im * b); }
Complex operator*(const Real& a, const Complex& b) { return b * a; }
Complex operator/(const Complex& a, const Real& b) { return Complex(a.re / b, a.im / b); }
Complex operator+(const Complex& a, const Real& b) { return Complex(a.re + b, a.im); }
Complex operator-(const Complex& a, const Real& b) { return Complex(a.re - b, a.im); }
Complex operator*(const Complex& a, long b) { return Complex(a.re * b, a.im * b); }

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

Real norm(const Complex& z) {
    Real out(z.precision());
    mpfr_sqr(out.raw(), z.re.raw(), kRnd);
    Real t(z.precision());
    mpfr_sqr(t.raw(), z.im.raw(), kRnd);
    out += t;
    return out;
}

Real abs(const Complex& z) {
    Real out(z.precision());
    mpfr_hypot(out.raw(), z.re.raw(), z.im.raw(), kRnd);
    return out;
}

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex exp(const Complex& z) {
    const Real m = exp(z.re);
    Complex out = cis(z.im);
    out *= m;
    return out;
}

Complex log(const Complex& z) { return Complex(log(abs(z)), arg(z)); }

Complex cis(const Real& theta) {
    Complex out(theta.precision());
    mpfr_sin_cos(out.im.raw(), out.re.raw(), theta.raw(), kRnd);
    return out;
}

Complex pow(const Complex& z, unsigned long n) {
    Complex result(Real(1L, z.precision()), Real(0L, z.precision()));
    Complex base = z;
    while (n > 0) {
        if (n & 1UL) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

Complex inverse_power(const Real& log_n, const Complex& s) {
    // n^{-s} = e^{-sigma log n} (cos(t log n) - i sin(t log n))
    Real phase = s.im * log_n;
    Complex out = cis(-phase);
    out *= exp(-(s.re * log_n));
    return out;
}

}  // namespace zm
