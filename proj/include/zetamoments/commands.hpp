#pragma once

// The verbs behind the zmoments executable. Each returns a Report; the
// executable only parses flags, renders and maps status to an exit code.

#include "zetamoments/report.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zm {

/// Setup or configuration problems: exit code 3.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr int kRemainderCases = 1000;

struct RunConfig {
    Precision prec_bits = kDefaultPrecision;
    std::optional<double> height;
    int M = 3;
    std::vector<double> k_values;
    std::optional<double> loglog_override;
    std::filesystem::path cache_dir = ".zmcache";
    unsigned threads = 0;
    OutputFormat format = OutputFormat::json;
    std::uint64_t seed = kDefaultSeed;
    bool rebuild = false;

    /// Throws UsageError on prec_bits < 64, M < 1 or a bad height.
    void validate(double min_height) const;
    EvalConfig eval() const;
    unsigned worker_count() const;
};

/// The zeros in (0, height] from the cache; throws UsageError when the
/// cache is missing or ends below height.
ZeroSet load_zero_set(const RunConfig& cfg, double height);

/// Primes far enough for every block of the schedule, at the working precision.
PrimeTable schedule_table(const MollifierSchedule& sched, Precision prec_bits);

Report cmd_zeros(const RunConfig& cfg);
Report cmd_moments(const RunConfig& cfg);
Report cmd_schedule(const RunConfig& cfg);
Report cmd_fit_exponent(const RunConfig& cfg);

Report verify_holder_cmd(const RunConfig& cfg);
Report verify_landau_cmd(const RunConfig& cfg);
Report verify_prop4_cmd(const RunConfig& cfg);
Report verify_rvm_cmd(const RunConfig& cfg);
Report verify_remainder_cmd(const RunConfig& cfg);
Report verify_schedule_invariants_cmd(const RunConfig& cfg);
/// Dispatch on holder, landau, prop4, rvm, remainder, schedule-invariants.
Report cmd_verify(const RunConfig& cfg, const std::string& which);

/// Least-squares slope of log(J/T) against log log(T/(2 pi e)); the
/// abscissa that absorbs the lower-order term of the zero count.
double fit_exponent_shifted(const std::vector<MomentReport>& reports);

}  // namespace zm
