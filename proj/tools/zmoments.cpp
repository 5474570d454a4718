// zmoments: zero cache, discrete moments and verification checks.
// Exit codes: 0 pass, 1 hard failure, 2 inconclusive precision, 3 usage.

#include "zetamoments/commands.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

void add_common(CLI::App* cmd, zm::RunConfig& cfg, bool zero_flags) {
    cmd->add_option("--height", cfg.height, "Height T");
    cmd->add_option("--prec-bits", cfg.prec_bits, "Working precision in bits")->check(CLI::Range(64, 1 << 20));
    cmd->add_option("--k", cfg.k_values, "Moment parameters k")->delimiter(',')->allow_extra_args(false);
    cmd->add_option("--M", cfg.M, "Schedule cutoff exponent M");
    cmd->add_option("--loglog-override", cfg.loglog_override, "Replace log log T in the schedule");
    cmd->add_option("--threads", cfg.threads, "Worker threads (0 = auto)");
    cmd->add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, zm::OutputFormat>{{"json", zm::OutputFormat::json}, {"csv", zm::OutputFormat::csv}},
            CLI::ignore_case));
    cmd->add_option("--seed", cfg.seed, "Seed for randomized sweeps");
    if (zero_flags) {
        cmd->add_option("--cache-dir", cfg.cache_dir, "Zero cache directory");
        cmd->add_flag("--rebuild", cfg.rebuild, "Discard the existing zero cache");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete moments of zeta' at zeta zeros"};
    app.require_subcommand(1);
    zm::RunConfig cfg;
    std::string which;

    auto* zeros = app.add_subcommand("zeros", "Compute or extend the zero cache up to --height");
    auto* moments = app.add_subcommand("moments", "J_k over cached zeros for each --k");
    auto* schedule = app.add_subcommand("schedule", "Print the mollifier block schedule");
    auto* verify = app.add_subcommand("verify", "Run one verification check");
    auto* fit = app.add_subcommand("fit-exponent", "Fit the growth exponent of J_k");
    for (auto* c : {zeros, moments, schedule, verify, fit}) add_common(c, cfg, true);
    verify->add_option("which", which, "holder|landau|prop4|rvm|remainder|schedule-invariants")
        ->required()
        ->check(CLI::IsMember({"holder", "landau", "prop4", "rvm", "remainder", "schedule-invariants"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        zm::Report rep;
        if (zeros->parsed()) {
            rep = zm::cmd_zeros(cfg);
        } else if (moments->parsed()) {
            rep = zm::cmd_moments(cfg);
        } else if (schedule->parsed()) {
            rep = zm::cmd_schedule(cfg);
        } else if (verify->parsed()) {
            rep = zm::cmd_verify(cfg, which);
        } else {
            rep = zm::cmd_fit_exponent(cfg);
        }
        std::cout << zm::render(rep, cfg.format);
        return zm::exit_code(rep.status);
    } catch (const zm::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 3;
    } catch (const zm::CacheCorruptError& e) {
        std::cerr << "cache error: " << e.what() << '\n';
        return 3;
    } catch (const zm::CacheLockedError& e) {
        std::cerr << "cache error: " << e.what() << '\n';
        return 3;
    } catch (const zm::AmbiguousCountError& e) {
        std::cerr << "inconclusive: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
