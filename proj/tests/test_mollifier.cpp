#include "doctest.h"

#include "zetamoments/mollifier.hpp"

#include <cmath>
#include <random>

using namespace zm;

namespace {

const Precision kP = 128;

Real R(double v) { return Real(v, kP); }

// I_1 = (1, 5] = {2, 3, 5}, I_2 = (5, 7] = {7}.
MollifierSchedule toy_three_plus_one() { return custom_schedule(Real(10L, kP), {R(5), R(7)}, {3, 2}); }

// I_1 = (1, 7] = {2, 3, 5, 7}, I_2 = (7, 13] = {11, 13}.
MollifierSchedule toy_six() { return custom_schedule(Real(12L, kP), {R(7), R(13)}, {3, 2}); }

Rational brute_coefficient(u64 n, const MollifierSchedule& s, const Rational& alpha) {
    // Direct transcription: group prime powers by block, check Omega per block.
    const Factorization f = factorize(n);
    std::vector<long> omega(static_cast<std::size_t>(s.J) + 1, 0);
    Rational out = 1;
    for (const auto& pp : f.factors) {
        const long j = s.block_of(pp.prime);
        if (j == 0) return 0;
        omega[static_cast<std::size_t>(j)] += pp.exponent;
        for (unsigned e = 0; e < pp.exponent; ++e) out *= alpha;
        for (unsigned e = 2; e <= pp.exponent; ++e) out /= e;
    }
    for (long j = 1; j <= s.J; ++j)
        if (omega[static_cast<std::size_t>(j)] > s.ells[static_cast<std::size_t>(j)]) return 0;
    return out;
}

void check_schedule_invariants(const MollifierSchedule& s) {
    REQUIRE(s.J >= 1);
    CHECK(s.alphas[0].is_zero());
    CHECK(s.upper[0] == 1L);
    for (long j = 1; j < s.J; ++j) {
        CHECK(abs(s.alphas[j + 1] / s.alphas[j] - 20L).to_double() < 1e-30);
        CHECK(s.ells[j + 1] < s.ells[j]);
    }
    const Real cutoff = pow(Real(10L, kP), -static_cast<long>(s.M));
    if (s.J >= 2) CHECK(s.alphas[s.J - 1] <= cutoff);
    CHECK(s.alphas[s.J] > cutoff);
    for (long j = 1; j <= s.J; ++j) {
        CHECK(s.upper[j] > s.upper[j - 1]);
        CHECK(s.ells[j] == ceil_to_long(exp(Real(2L, kP)) * pow(s.alphas[j], R(-0.75))));
    }
}

}  // namespace

TEST_CASE("schedule examples") {
    const auto s = build_schedule(Real(1e5, kP), 3, 100.0);
    REQUIRE(s.J == 2);
    CHECK(abs(s.alphas[1] - Real::parse("1e-4", kP)).to_double() < 1e-36);
    CHECK(abs(s.alphas[2] - Real::parse("2e-3", kP)).to_double() < 1e-36);
    CHECK(s.ells[1] == 7390);
    CHECK(s.loglog_overridden);
    check_schedule_invariants(s);

    const auto d = build_schedule(Real(2000L, kP), 3);
    CHECK(d.J == 1);
    CHECK(d.alphas[1].to_double() == doctest::Approx(0.245).epsilon(0.01));
    CHECK(std::abs(d.alphas[1].to_double() - 1.0 / std::pow(std::log(std::log(2000.0)), 2)) < 1e-15);
    check_schedule_invariants(d);

    CHECK_THROWS_AS(build_schedule(Real(15L, kP), 3), DomainError);  // 15 < e^e
    CHECK_NOTHROW(build_schedule(Real(15L, kP), 3, 2.0));
    CHECK_THROWS_AS(build_schedule(Real(2000L, kP), 0), DomainError);
}

TEST_CASE("schedule invariants across parameters") {
    check_schedule_invariants(build_schedule(Real(1e5, kP), 4, 1000.0));
    CHECK(build_schedule(Real(1e5, kP), 4, 1000.0).J == 3);
    check_schedule_invariants(build_schedule(Real(1e5, kP), 2, 100.0));
    check_schedule_invariants(build_schedule(Real(500L, kP), 3));
    check_schedule_invariants(build_schedule(Real(1e5, kP), 6, 1e4));
}

TEST_CASE("custom schedules reject bad endpoints") {
    CHECK_THROWS_AS(custom_schedule(Real(10L, kP), {R(7), R(5)}, {3, 2}), DomainError);
    CHECK_THROWS_AS(custom_schedule(Real(10L, kP), {R(7)}, {-1}), DomainError);
}

TEST_CASE("block primes and P_j") {
    const auto table = sieve_primes(100, kP);
    const auto s = custom_schedule(Real(10L, kP), {R(2), R(10)}, {3, 2});
    const RationalPoly p2 = build_P_j(s, 2, table);
    CHECK(p2.size() == 3);
    CHECK(p2.coefficient(3) == 1);
    CHECK(p2.coefficient(5) == 1);
    CHECK(p2.coefficient(7) == 1);
    const auto empty = custom_schedule(Real(10L, kP), {R(1.5), R(10)}, {3, 2});
    CHECK(build_P_j(empty, 1, table).empty());
    const RationalPoly N = build_N(empty, Rational(-1), table);
    CHECK(N.coefficient(2) == -1);  // 2 lies in I_2 = (1.5, 10]
    CHECK(N.coefficient(3) == -1);
    CHECK(N.coefficient(4) == Rational(1, 2));
    CHECK_THROWS_AS(build_P_j(s, 3, table), DomainError);
    CHECK_THROWS_AS(build_P_j(custom_schedule(Real(10L, kP), {R(1000)}, {2}), 1, table), InsufficientTableError);
}

TEST_CASE("sum of 1/p over a synthetic block stays in the log 20 band") {
    // log T = 5000 with log log T = 100: I_1 = (1, e^{0.5}], I_2 = (e^{0.5}, e^{10}].
    const auto s = build_schedule(exp(Real(5000L, kP)), 3, 100.0);
    REQUIRE(s.J == 2);
    const auto table = sieve_primes(s.upper_floor(2), kP);
    CHECK(block_primes(s, 1, table).empty());
    Real sum(kP);
    for (u64 p : block_primes(s, 2, table)) sum += Real(1L, kP) / static_cast<long>(p);
    const Real mertens = mertens_reciprocal_sum(s.upper_floor(2), table);
    CHECK(abs(sum - mertens).to_double() < 1e-35);
    CHECK(sum <= 10L);
    CHECK(sum.to_double() == doctest::Approx(std::log(10.0) + 0.2615).epsilon(0.05));
}

TEST_CASE("build_N on a single block with one prime is the scalar exponential") {
    const auto table = sieve_primes(10, kP);
    const auto s = custom_schedule(Real(10L, kP), {R(2)}, {4});
    const Rational a(-3, 2);
    const RationalPoly N = build_N(s, a, table);
    CHECK(N.size() == 5);
    CHECK(N.coefficient(1) == 1);
    CHECK(N.coefficient(2) == a);
    CHECK(N.coefficient(4) == a * a / 2);
    CHECK(N.coefficient(8) == a * a * a / 6);
    CHECK(N.coefficient(16) == a * a * a * a / 24);
    CHECK(build_N(s, Rational(0), table) == RationalPoly::one());
}

TEST_CASE("build_N equals the coefficient law on toy schedules") {
    for (const auto& s : {toy_three_plus_one(), toy_six()}) {
        const auto table = sieve_primes(20, kP);
        const auto support = enumerate_support(s, table);
        for (const Rational alpha : {Rational(-1), Rational(1, 2), Rational(-3, 2), Rational(-2)}) {
            const RationalPoly N = build_N(s, alpha, table);
            CHECK(N.size() == support.size());
            for (u64 n : support) {
                REQUIRE(N.coefficient(n) == coefficient_a_alpha(n, s, alpha));
                REQUIRE(N.coefficient(n) == brute_coefficient(n, s, alpha));
                // |a(n)| <= e^{|alpha| omega(n)}
                const double bound = std::exp(std::abs(alpha.get_d()) * factorize(n).small_omega);
                REQUIRE(std::abs(N.coefficient(n).get_d()) <= bound);
                REQUIRE(n <= s.support_cap());
            }
            for (u64 n = 1; n <= 3000; ++n)
                if (!N.find(n)) REQUIRE(coefficient_a_alpha(n, s, alpha) == 0);
        }
    }
}

TEST_CASE("coefficient law examples") {
    const auto s = toy_three_plus_one();
    const Rational a(-1);
    CHECK(coefficient_a_alpha(1, s, a) == 1);
    CHECK(coefficient_a_alpha(3, s, a) == a);
    CHECK(coefficient_a_alpha(9, s, a) == Rational(1, 2));
    CHECK(coefficient_a_alpha(11, s, a) == 0);       // 11 outside every block
    CHECK(coefficient_a_alpha(16, s, a) == 0);       // Omega = 4 > ell_1 = 3
    CHECK(coefficient_a_alpha(49, s, a) == Rational(1, 2));
    CHECK(coefficient_a_alpha(343, s, a) == 0);      // Omega = 3 > ell_2 = 2
    CHECK(coefficient_a_alpha(2 * 3 * 5 * 7, s, a) == 1);
    const Real r = coefficient_a_alpha(12, s, Real(-0.5, kP));
    CHECK(abs(r - Real(-0.0625, kP)).to_double() < 1e-37);
}

TEST_CASE("real build_N agrees with the rational one") {
    const auto s = toy_six();
    const auto table = sieve_primes(20, kP);
    const RationalPoly q = build_N(s, Rational(-1, 2), table);
    const RealPoly r = build_N(s, Real(-0.5, kP), table);
    REQUIRE(q.size() == r.size());
    for (const auto& [n, c] : q.coeffs()) CHECK(abs(r.coefficient(n) - Real(c, kP)).to_double() < 1e-36);
}

TEST_CASE("c weights") {
    const auto s = custom_schedule(Real(10L, kP), {R(7), R(13)}, {3, 2});
    const Real one(1L, kP);
    CHECK(abs(c_weight(7, one, s, 1)).to_double() < 1e-37);
    CHECK(c_weight(2, one, s, 1) > 0L);
    CHECK_THROWS_AS(c_weight(11, one, s, 1), DomainError);
    CHECK_THROWS_AS(c_weight(2, one, s, 3), DomainError);
    const auto big = custom_schedule(Real(1e6, kP), {Real::parse("1e18", kP)}, {2});
    CHECK(c_weight(2, one, big, 1).to_double() == doctest::Approx(1.0).epsilon(0.05));
    const auto table = sieve_primes(13, kP);
    for (double k : {-0.5, -1.0, -2.0, -3.5}) {
        const Real kr(k, kP);
        for (long j = 1; j <= s.J; ++j) {
            for (long l = 1; l <= j; ++l) {
                for (u64 p : block_primes(s, l, table)) CHECK(abs(c_weight(p, kr, s, j)).to_double() <= 2 - k);
            }
        }
    }
    const Real c6 = c_weight_multiplicative(12, one, s, 1);
    const Real c2 = c_weight(2, one, s, 1), c3 = c_weight(3, one, s, 1);
    CHECK(abs(c6 - c2 * c2 * c3).to_double() < 1e-37);
}

TEST_CASE("prime sums M and P") {
    const auto s = toy_six();
    const auto table = sieve_primes(1000, kP);
    const Complex m0 = M_lj(Real(kP), 1, 2, s, table);
    CHECK(m0.re > 0L);
    CHECK(m0.im.is_zero());
    const auto empty = custom_schedule(Real(10L, kP), {R(1.5), R(10)}, {3, 2});
    CHECK(M_lj(R(3.3), 1, 2, empty, table).is_zero());
    CHECK_THROWS_AS(M_lj(R(1), 2, 1, s, table), DomainError);
    CHECK_THROWS_AS(M_lj(R(1), 1, 3, s, table), DomainError);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> g(0, 3000);
    for (int i = 0; i < 30; ++i) {
        const Real gamma(g(rng), kP);
        for (long l = 1; l <= 2; ++l) {
            double tri = 0;
            for (u64 p : block_primes(s, l, table)) tri += 1.0 / std::sqrt(static_cast<double>(p));
            CHECK(abs(M_lj(gamma, l, 2, s, table)).to_double() <= tri + 1e-15);
        }
        for (long m = 0; m <= 8; ++m) {
            double tri = 0;
            for (u64 p : table.primes_in(u64{1} << m, u64{2} << m)) tri += 1.0 / (2.0 * static_cast<double>(p));
            CHECK(abs(P_m_sum(gamma, m, table)).to_double() <= tri + 1e-15);
        }
        const Complex p1 = P_m_sum(gamma, 1, table);
        const Complex expect = cis(-(gamma * log(Real(3L, kP)) * 2L)) / Real(6L, kP);
        CHECK(abs(p1 - expect).to_double() < 1e-33);
    }
    const Complex p0 = P_m_sum(Real(kP), 0, table);
    CHECK(abs(p0.re - Real(0.25, kP)).to_double() < 1e-37);

    // M' on l = 1 drops p <= 2^{m+1}
    const Real k(-1L, kP);
    const Complex mp = M_prime_lj(Real(kP), 1, 2, k, 1, s, table);
    Real direct(kP);
    for (u64 p : {5ULL, 7ULL}) direct += c_weight(p, k, s, 2) / sqrt(Real(static_cast<unsigned long>(p), kP));
    CHECK(abs(mp.re - direct).to_double() < 1e-36);
}

TEST_CASE("classifier fixtures") {
    const auto s = build_schedule(exp(Real(5000L, kP)), 3, 100.0);
    REQUIRE(s.J == 2);
    const Real k(-1L, kP);
    auto blank = [&] {
        ClassifierInputs in;
        in.M.assign(3, std::vector<Complex>(3, Complex(kP)));
        in.P.assign(4, Complex(kP));
        in.kP1_abs = Real(kP);
        return in;
    };
    ClassifierInputs in = blank();
    CHECK(classify_values(in, s, k).s_index == 2);
    CHECK(!classify_values(in, s, k).p_index);
    CHECK(classify_values(in, s, k).in_T);

    in.M[1][1] = Complex(Real(1e6, kP));  // above alpha_1^{-3/4} = 1000
    CHECK(classify_values(in, s, k).s_index == 0);
    in = blank();
    in.M[2][2] = Complex(Real(1e3, kP));  // above alpha_2^{-3/4} ~ 105.7
    CHECK(classify_values(in, s, k).s_index == 1);
    in.M[1][2] = Complex(Real(1e6, kP));
    CHECK(classify_values(in, s, k).s_index == 0);

    in = blank();
    in.P[3] = Complex(Real(0.9, kP));  // 2^{-3/10} = 0.81
    in.P[1] = Complex(Real(1.0, kP));
    CHECK(*classify_values(in, s, k).p_index == 3);
    in.P[3] = Complex(Real(0.8, kP));
    CHECK(*classify_values(in, s, k).p_index == 1);

    in = blank();
    in.kP1_abs = Real(499L, kP);  // limit alpha_1^{-3/4} / 2 = 500
    CHECK(classify_values(in, s, k).in_T);
    in.kP1_abs = Real(501L, kP);
    CHECK(!classify_values(in, s, k).in_T);
    CHECK_THROWS_AS(classify_values(in, s, Real(1L, kP)), DomainError);
}

TEST_CASE("classifier is exhaustive and consistent on a gamma sweep") {
    const auto s = build_schedule(exp(Real(5000L, kP)), 3, 100.0);
    const auto table = sieve_primes(s.upper_floor(s.J), 64);
    const Real k(-1L, 64);
    CHECK(max_P_index(s, table) == std::min(static_cast<long>(100 / std::log(2.0)), 13L));
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> g(1000, 2000);
    for (int i = 0; i < 20; ++i) {
        const Real gamma(g(rng), 64);
        const auto in = classifier_inputs(gamma, s, table, k);
        const GammaClass c = classify_values(in, s, k);
        CHECK(c == classify_gamma(gamma, s, table, k));
        CHECK(c.s_index >= 0);
        CHECK(c.s_index <= s.J);
        if (c.p_index) {
            CHECK(abs(P_m_sum(gamma, *c.p_index, table)).to_double() > std::pow(2.0, -*c.p_index / 10.0));
        }
        const long top = c.p_index ? *c.p_index + 1 : 0;
        for (long m = top; m <= max_P_index(s, table); ++m)
            CHECK(abs(P_m_sum(gamma, m, table)).to_double() <= std::pow(2.0, -m / 10.0));
        const double kp1 = abs(block_values(gamma, s, table)[1]).to_double();
        CHECK(c.in_T == (kp1 <= std::pow(1e-4, -0.75) / 2));
    }
}

TEST_CASE("Q_l polynomials") {
    const auto s = custom_schedule(Real(10L, kP), {R(5), R(7)}, {3, 2});
    const Real k(-1L, kP);
    CHECK(Q_l_value(Complex(kP), k, 1, 0, s).is_zero());
    const Complex P1(Real(0.1, kP), Real(0.05, kP));
    const Complex q = Q_l_value(P1, k, 1, 5, s);
    const Real one(1L, kP);
    const Real scale = (one - k) * 2L * exp(one / (const_e(kP) * (one - one / k))) * pow(s.alphas[1], R(0.75));
    const Complex expect = pow(P1 * scale, static_cast<unsigned long>(2 * s.ells[1]));  // ceil(1 - 1/k) = 2
    CHECK(abs(q - expect).to_double() <= 1e-30 * abs(expect).to_double());
    const Complex q_next = Q_l_value(P1, k, 2, 1, s);
    const Complex expect_next =
        pow(P1 * ((one - k) * 4L * pow(s.alphas[2], R(0.75))), static_cast<unsigned long>(ceil_to_long(one / (s.alphas[2] * 10L))));
    CHECK(abs(q_next - expect_next).to_double() <= 1e-30 * abs(expect_next).to_double());
    CHECK_THROWS_AS(Q_l_value(P1, Real(1L, kP), 1, 0, s), DomainError);
    CHECK_THROWS_AS(Q_l_value(P1, k, 3, 0, s), DomainError);
}

TEST_CASE("block bound when the trigger fires") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1, 1);
    long fired = 0;
    for (const auto& s : {build_schedule(Real(2000L, kP), 3), build_schedule(Real(1e5, kP), 3)}) {
        const double lim = std::pow(s.alphas[1].to_double(), -0.75);
        for (double kd : {-0.5, -1.0, -2.0}) {
            const Real k(kd, kP);
            for (int i = 0; i < 100; ++i) {
                const double r = lim * (0.5 + 4 * std::abs(u(rng))), phi = M_PI * u(rng);
                const Complex P(Real(r * std::cos(phi), kP), Real(r * std::sin(phi), kP));
                const BlockBound b = N_l_bound(P, k, 1, s);
                if (!b.triggered) continue;
                ++fired;
                CHECK(b.block_abs <= b.bound);
            }
        }
    }
    CHECK(fired > 100);
}

TEST_CASE("conditional approximation of the first block") {
    const auto s = build_schedule(Real(2000L, kP), 3);
    const Real k(-1L, kP);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 200; ++i) {
        const Complex P(Real(2 * u(rng), kP), Real(2 * u(rng), kP));
        const N1Check c = N1_check(P, k, s);
        if (c.in_T) CHECK(c.holds());
    }
    const N1Check z = N1_check(Complex(kP), k, s);
    CHECK(z.r.is_zero());
    CHECK(z.holds());
}

TEST_CASE("support enumeration and Rankin guard") {
    const auto s = toy_six();
    const auto table = sieve_primes(20, kP);
    const auto support = enumerate_support(s, table);
    CHECK(support.front() == 1);
    CHECK(std::is_sorted(support.begin(), support.end()));
    // block 1: Omega <= 3 over 4 primes -> C(7,4) = 35; block 2: Omega <= 2 over 2 primes -> 6
    CHECK(support.size() == 35 * 6);
    CHECK(rankin_guard(s, table, 3));
    CHECK_THROWS_AS(enumerate_support(s, table, 100), SupportOverflowError);
}
