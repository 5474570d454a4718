#include "zetamoments/commands.hpp"

#include "zetamoments/parallel.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace zm {

namespace {

constexpr double kMinZeroHeight = 20.0;
constexpr u64 kMaxScheduleTable = 50'000'000;

std::vector<double> k_values_or(const RunConfig& cfg, std::vector<double> fallback) {
    return cfg.k_values.empty() ? fallback : cfg.k_values;
}

double required_height(const RunConfig& cfg) {
    if (!cfg.height) throw UsageError("--height is required for this verb");
    return *cfg.height;
}

MollifierSchedule schedule_for(const RunConfig& cfg) {
    try {
        return build_schedule(Real(required_height(cfg), cfg.prec_bits), cfg.M, cfg.loglog_override);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

std::string fmt_double(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
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

}  // namespace

void RunConfig::validate(double min_height) const {
    if (prec_bits < 64) throw UsageError("--prec-bits must be at least 64");
    if (M < 1) throw UsageError("--M must be at least 1");
    if (height) {
        if (!std::isfinite(*height) || *height < min_height) {
            throw UsageError("--height must be at least " + fmt_double(min_height));
        }
        if (*height > kMaxHeight) throw UsageError("--height exceeds the supported maximum " + fmt_double(kMaxHeight));
    }
    if (loglog_override && !(*loglog_override > 0)) throw UsageError("--loglog-override must be positive");
}

EvalConfig RunConfig::eval() const {
    EvalConfig c;
    c.prec_bits = prec_bits;
    return c;
}

unsigned RunConfig::worker_count() const { return resolve_threads(threads); }

ZeroSet load_zero_set(const RunConfig& cfg, double height) {
    const auto path = cache_path(cfg.cache_dir, cfg.prec_bits);
    const auto file = read_cache(path);
    const Real h(height, cfg.prec_bits);
    const std::string hint = "run `zmoments zeros --height " + fmt_double(height) + " --prec-bits " +
                             std::to_string(cfg.prec_bits) + " --cache-dir " + cfg.cache_dir.string() + "` first";
    if (!file) throw UsageError("no zero cache at " + path.string() + "; " + hint);
    if (file->t_hi < h) throw UsageError("zero cache ends at " + file->t_hi.to_string(12) + "; " + hint);
    const ZeroCacheFile part = restrict_to(*file, h);
    ZeroSet zs;
    zs.t_lo = part.t_lo;
    zs.t_hi = part.t_hi;
    zs.zeros = part.records;
    return zs;
}

PrimeTable schedule_table(const MollifierSchedule& sched, Precision prec_bits) {
    const u64 limit = std::max<u64>(sched.upper_floor(sched.J), 2);
    if (limit > kMaxScheduleTable) {
        throw UsageError("schedule blocks reach " + std::to_string(limit) + ", beyond the prime table limit");
    }
    return sieve_primes(limit, prec_bits + kGuardBits);
}

Report cmd_zeros(const RunConfig& cfg) {
    if (!cfg.height) throw UsageError("--height is required for this verb");
    cfg.validate(1.0);
    const EnsureResult res =
        ensure_zeros(cfg.cache_dir, Real(*cfg.height, cfg.prec_bits), cfg.eval(), cfg.worker_count(), cfg.rebuild);
    const ZeroCacheFile part = restrict_to(res.file, Real(*cfg.height, cfg.prec_bits));
    Report rep;
    rep.kind = "zeros";
    Record rec = cache_record(res.file);
    rec.add("requested_height", Real(*cfg.height, cfg.prec_bits)).add("zeros_up_to_height", part.zero_count);
    rec.add("cache_hit", res.cache_hit).add("extended", res.extended);
    rep.rows.push_back(std::move(rec));
    return rep;
}

Report cmd_moments(const RunConfig& cfg) {
    const double H = required_height(cfg);
    cfg.validate(kMinZeroHeight);
    const ZeroSet zs = load_zero_set(cfg, H);
    Report rep;
    rep.kind = "moments";
    for (double k : k_values_or(cfg, {0.0})) {
        const MomentReport m = compute_Jk(zs, Real(k, cfg.prec_bits), cfg.worker_count());
        if (k == -1.0) {
            rep.notes.push_back(
                "k = -1: J/T is compared with 3/(2 pi^3) and 3/pi^3; an asymptotic lower bound checked at one "
                "finite height is evidence, not a proof");
        }
        rep.rows.push_back(to_record(m));
    }
    return rep;
}

Report cmd_schedule(const RunConfig& cfg) {
    cfg.validate(0.0);
    const MollifierSchedule s = schedule_for(cfg);
    Report rep;
    rep.kind = "schedule";
    rep.rows = schedule_records(s);
    if (s.loglog_overridden) rep.notes.push_back("log log T replaced by --loglog-override");
    return rep;
}

double fit_exponent_shifted(const std::vector<MomentReport>& reports) {
    if (reports.size() < 3) throw DomainError("fit_exponent_shifted: need at least 3 reports");
    std::vector<double> x, y;
    for (const auto& r : reports) {
        const Precision P = r.t_hi.precision();
        const Real T = r.t_hi;
        const Real shifted = T / (const_pi(P) * 2L * const_e(P));
        if (!(shifted > 1L)) throw DomainError("fit_exponent_shifted: T must exceed 2 pi e");
        x.push_back(log(log(shifted)).to_double());
        y.push_back(log(r.J_value / T).to_double());
    }
    return least_squares_slope(x, y);
}

Report cmd_fit_exponent(const RunConfig& cfg) {
    const double H = required_height(cfg);
    cfg.validate(4 * kMinZeroHeight);
    const ZeroSet all = load_zero_set(cfg, H);
    const std::vector<double> grid = {H / 4, H / 2, H};
    Report rep;
    rep.kind = "fit-exponent";
    rep.notes.push_back("slope of log(J_k/T) against log log T over T = H/4, H/2, H; a diagnostic only");
    for (double k : k_values_or(cfg, {0.0, 1.0, -1.0})) {
        std::vector<MomentReport> reports;
        for (double T : grid) {
            const ZeroSet zs = all.window(all.t_lo, Real(T, cfg.prec_bits));
            reports.push_back(compute_Jk(zs, Real(k, cfg.prec_bits), cfg.worker_count()));
        }
        Record rec;
        rec.add("k", k).add("T_min", grid.front()).add("T_max", grid.back());
        rec.add("slope", fit_moment_exponent(reports)).add("conjectured_exponent", (k + 1) * (k + 1));
        rec.add("slope_shifted", fit_exponent_shifted(reports));
        rep.rows.push_back(std::move(rec));
    }
    return rep;
}

Report verify_holder_cmd(const RunConfig& cfg) {
    const double H = required_height(cfg);
    cfg.validate(kMinZeroHeight);
    const ZeroSet zs = load_zero_set(cfg, H);
    const MollifierSchedule sched = schedule_for(cfg);
    const PrimeTable table = schedule_table(sched, cfg.prec_bits);
    Report rep;
    rep.kind = "verify-holder";
    for (double k : k_values_or(cfg, {-0.5, -1.0, -2.0})) {
        if (!(k < 0)) throw UsageError("verify holder needs negative --k values");
        const HolderReport h = verify_holder(zs, Real(k, cfg.prec_bits), sched, table, cfg.worker_count());
        rep.merge(h.status);
        rep.rows.push_back(to_record(h));
    }
    return rep;
}

Report verify_landau_cmd(const RunConfig& cfg) {
    const double H = required_height(cfg);
    cfg.validate(kMinZeroHeight);
    const ZeroSet all = load_zero_set(cfg, H);
    const ZeroSet zs = all.window(Real(H / 2, cfg.prec_bits), Real(H, cfg.prec_bits));
    Report rep;
    rep.kind = "verify-landau";
    rep.notes.push_back("window (H/2, H]; the main term uses the window length t_hi - t_lo");
    const std::vector<std::pair<long, long>> pairs = {{2, 1}, {3, 1}, {4, 1}, {3, 2}, {6, 1}, {1, 1}};
    for (auto [a, b] : pairs) {
        const LandauReport l = landau_gonek(zs, a, b, cfg.worker_count());
        Status s = l.within_budget() ? Status::pass : Status::fail;
        if (a == b && !(l.empirical.re == Real(l.zero_count, cfg.prec_bits) && l.empirical.im.is_zero())) {
            s = Status::fail;
        }
        rep.merge(s);
        Record rec = to_record(l);
        rep.rows.push_back(std::move(rec));
    }
    return rep;
}

Report verify_prop4_cmd(const RunConfig& cfg) {
    const double H = required_height(cfg);
    cfg.validate(kMinZeroHeight);
    const ZeroSet zs = load_zero_set(cfg, H);
    const MollifierSchedule sched = schedule_for(cfg);
    const PrimeTable table = schedule_table(sched, cfg.prec_bits);
    Report rep;
    rep.kind = "verify-prop4";
    rep.notes.push_back("lhs against main1 + main2 is a diagnostic; the check is main1 against the block product");
    for (double k : k_values_or(cfg, {-1.0})) {
        if (!(k < 0)) throw UsageError("verify prop4 needs negative --k values");
        const Prop4Report p = prop4_sides(zs, sched, table, Real(k, cfg.prec_bits), cfg.worker_count());
        const Rational block = block_product_formula(sched, table, Rational(k));
        const Status s = block == p.square_sum_exact ? Status::pass : Status::fail;
        rep.merge(s);
        Record rec = to_record(p);
        rec.add("block_product", block).add("status", s);
        rep.rows.push_back(std::move(rec));
    }
    return rep;
}

Report verify_rvm_cmd(const RunConfig& cfg) {
    const double H = cfg.height.value_or(2000.0);
    RunConfig c = cfg;
    c.height = H;
    c.validate(kMinZeroHeight);
    std::vector<double> heights;
    for (double T = 50; T <= H; T += 50) heights.push_back(T);
    if (heights.empty() || heights.back() != H) heights.push_back(H);
    const EvalConfig ec = cfg.eval();
    std::vector<Real> residual(heights.size(), Real(cfg.prec_bits));
    std::vector<long> counts(heights.size());
    parallel_for(heights.size(), cfg.worker_count(), [&](std::size_t i) {
        const Real T(heights[i], cfg.prec_bits);
        counts[i] = count_zeros(T, ec);
        residual[i] = rvm_residual(T, ec);
    });
    Report rep;
    rep.kind = "verify-rvm";
    for (std::size_t i = 0; i < heights.size(); ++i) {
        const Real T(heights[i], cfg.prec_bits);
        const Real bound = log(T) * 2L;
        const Status s = abs(residual[i]) <= bound ? Status::pass : Status::fail;
        rep.merge(s);
        Record rec;
        rec.add("T", T).add("N_T", counts[i]).add("residual", residual[i]).add("bound", bound).add("status", s);
        rep.rows.push_back(std::move(rec));
    }
    return rep;
}

Report verify_remainder_cmd(const RunConfig& cfg) {
    cfg.validate(0.0);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<long> degree(1, 30);
    struct Case {
        double x, y;
        long d;
    };
    std::vector<Case> cases(kRemainderCases);
    for (auto& c : cases) {
        const double r = 10.0 * std::sqrt(unit(rng));
        const double phi = 2.0 * M_PI * unit(rng);
        c.x = r * std::cos(phi);
        c.y = r * std::sin(phi);
        c.d = degree(rng);
    }
    std::vector<RemainderCheck> checks(cases.size());
    parallel_for(cases.size(), cfg.worker_count(), [&](std::size_t i) {
        checks[i] = remainder_check(Complex(cases[i].x, cases[i].y, cfg.prec_bits), cases[i].d);
    });
    long failures = 0;
    Real worst(0L, cfg.prec_bits);
    for (const auto& c : checks) {
        if (!c.holds()) ++failures;
        if (!c.bound.is_zero()) worst = max(worst, c.lhs / c.bound);
    }
    Report rep;
    rep.kind = "verify-remainder";
    const Status s = failures == 0 ? Status::pass : Status::fail;
    rep.merge(s);
    Record rec;
    rec.add("seed", std::to_string(cfg.seed)).add("cases", static_cast<long>(cases.size()));
    rec.add("failures", failures).add("max_lhs_over_bound", worst).add("status", s);
    rep.rows.push_back(std::move(rec));
    return rep;
}

Report verify_schedule_invariants_cmd(const RunConfig& cfg) {
    cfg.validate(0.0);
    const MollifierSchedule s = schedule_for(cfg);
    const Precision P = s.precision();
    Report rep;
    rep.kind = "verify-schedule-invariants";
    auto check = [&](const std::string& name, Status st, const std::string& detail) {
        rep.merge(st);
        Record rec;
        rec.add("check", name).add("status", st).add("detail", detail);
        rep.rows.push_back(std::move(rec));
    };
    auto verdict = [](bool ok) { return ok ? Status::pass : Status::fail; };

    const Real rel_tol = ldexp(Real(1L, P), -static_cast<long>(P) + 8);
    bool ratio_ok = true;
    for (long j = 1; j < s.J; ++j)
        if (abs(s.alphas[j + 1] / s.alphas[j] - 20L) > rel_tol * 20L) ratio_ok = false;
    check("alpha_ratio", verdict(ratio_ok), "alpha_{j+1}/alpha_j = 20 for 1 <= j < J");

    const Real cutoff = pow(Real(10L, P), -static_cast<long>(s.M));
    const Real alpha1 = s.alphas.size() > 1 ? s.alphas[1] : Real(P);
    bool J_ok = s.J >= 1;
    if (s.J >= 2) J_ok = J_ok && s.alphas[s.J - 1] <= cutoff;
    J_ok = J_ok && (s.J == 1 ? alpha1 > cutoff : s.alphas[s.J] > cutoff);
    check("block_count", verdict(J_ok), "J = 1 + max{j : alpha_j <= 10^-M}, J = " + std::to_string(s.J));

    bool ell_ok = true;
    const Real e2 = exp(Real(2L, P));
    for (long j = 1; j <= s.J; ++j) {
        const long expect = ceil_to_long(e2 * pow(s.alphas[j], Real(-0.75, P)));
        if (s.ells[j] != expect) ell_ok = false;
        if (j > 1 && !(s.ells[j] < s.ells[j - 1])) ell_ok = false;
    }
    check("ell_decreasing", verdict(ell_ok), "ell_j = ceil(e^2 alpha_j^{-3/4}), strictly decreasing");

    bool interval_ok = s.upper[0] == 1L;
    for (long j = 1; j <= s.J; ++j) {
        if (!(s.upper[j] > s.upper[j - 1])) interval_ok = false;
        const Real expect = exp(s.log_T * s.alphas[j]);
        if (abs(s.upper[j] / expect - 1L) > rel_tol) interval_ok = false;
    }
    check("intervals", verdict(interval_ok), "I_j = (T^{alpha_{j-1}}, T^{alpha_j}] consecutive from 1");

    try {
        const PrimeTable table = schedule_table(s, cfg.prec_bits);
        check("rankin_guard", verdict(rankin_guard(s, table, 2)),
              "2^{Omega(n_j) - ell_j} >= 1 wherever b_j(n_j) = 0, Omega up to ell_j + 2");
    } catch (const std::exception& e) {
        check("rankin_guard", Status::inconclusive, std::string("not enumerated: ") + e.what());
    }
    return rep;
}

Report cmd_verify(const RunConfig& cfg, const std::string& which) {
    if (which == "holder") return verify_holder_cmd(cfg);
    if (which == "landau") return verify_landau_cmd(cfg);
    if (which == "prop4") return verify_prop4_cmd(cfg);
    if (which == "rvm") return verify_rvm_cmd(cfg);
    if (which == "remainder") return verify_remainder_cmd(cfg);
    if (which == "schedule-invariants") return verify_schedule_invariants_cmd(cfg);
    throw UsageError("unknown check '" + which + "'");
}

}  // namespace zm
