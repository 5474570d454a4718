#pragma once

// Arbitrary-precision real and complex scalars on top of MPFR.
//
// Every value owns its precision (in bits). Binary operations round to the
// larger precision of their operands, so a computation seeded with values at
// a given precision stays at that precision without any global state. This
// keeps evaluation thread-safe: workers never share a default precision.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace zm {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 128;

class Real {
public:
    explicit Real(Precision prec = kDefaultPrecision);
    Real(double v, Precision prec);
    Real(long v, Precision prec);
    Real(int v, Precision prec) : Real(static_cast<long>(v), prec) {}
    Real(unsigned long v, Precision prec);
    Real(const mpq_class& q, Precision prec);

    /// Parses a decimal (or "inf"/"nan") string, correctly rounded.
    static Real parse(std::string_view text, Precision prec);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    Real& operator=(double v);
    Real& operator=(long v);
    ~Real();

    Precision precision() const noexcept { return mpfr_get_prec(value_); }
    /// Rounds the stored value to a new precision.
    Real& round_to(Precision prec);
    Real rounded(Precision prec) const;

    mpfr_ptr raw() noexcept { return value_; }
    mpfr_srcptr raw() const noexcept { return value_; }

    double to_double() const noexcept;
    long to_long() const;  // truncation toward zero; throws if out of range
    bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
    int sign() const noexcept { return mpfr_sgn(value_); }
    /// Binary exponent e with 0.5 <= |x| / 2^e < 1; undefined for zero.
    long exponent2() const noexcept { return mpfr_get_exp(value_); }

    /// Shortest decimal string that reads back to the identical value at
    /// this precision ("d.ddde+XX").
    std::string to_string() const;
    /// Decimal string with a fixed number of significant digits.
    std::string to_string(std::size_t digits) const;

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real& operator+=(long o);
    Real& operator-=(long o);
    Real& operator*=(long o);
    Real& operator/=(long o);
    Real& operator*=(double o);

    Real operator-() const;

private:
    mpfr_t value_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
Real operator*(const Real& a, long b);
Real operator/(const Real& a, long b);
Real operator+(long a, const Real& b);
Real operator-(long a, const Real& b);
Real operator*(long a, const Real& b);
Real operator/(long a, const Real& b);
Real operator*(const Real& a, double b);
Real operator*(double a, const Real& b);
Real operator+(const Real& a, double b);
Real operator-(const Real& a, double b);

bool operator==(const Real& a, const Real& b);
std::partial_ordering operator<=>(const Real& a, const Real& b);
bool operator==(const Real& a, double b);
std::partial_ordering operator<=>(const Real& a, double b);
bool operator==(const Real& a, long b);
std::partial_ordering operator<=>(const Real& a, long b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
void sin_cos(const Real& x, Real& s, Real& c);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real floor(const Real& x);
Real ceil(const Real& x);
Real ldexp(const Real& x, long e);  // x * 2^e, exact
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
Real factorial(unsigned long n, Precision prec);
Real log_factorial(unsigned long n, Precision prec);

Real const_pi(Precision prec);
Real const_euler(Precision prec);
Real const_log2(Precision prec);
Real const_e(Precision prec);

/// Complex number with independently rounded real and imaginary parts.
struct Complex {
    Real re;
    Real im;

    explicit Complex(Precision prec = kDefaultPrecision) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(Real r) : re(std::move(r)), im(0L, re.precision()) {}
    Complex(double r, double i, Precision prec) : re(r, prec), im(i, prec) {}

    Precision precision() const noexcept { return std::max(re.precision(), im.precision()); }
    Complex& round_to(Precision prec);
    bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const Real& o);
    Complex& operator/=(const Real& o);
    Complex operator-() const { return Complex(-re, -im); }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator+(const Complex& a, const Real& b);
Complex operator-(const Complex& a, const Real& b);
Complex operator*(const Complex& a, long b);

Complex conj(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
/// e^{i theta}
Complex cis(const Real& theta);
Complex pow(const Complex& z, unsigned long n);
/// n^{-s} for a positive integer n, given log n.
Complex inverse_power(const Real& log_n, const Complex& s);

/// Smallest integer >= x, exact for finite x; throws on overflow.
long ceil_to_long(const Real& x);

}  // namespace zm
