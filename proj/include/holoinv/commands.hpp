#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace holoinv::cli {

enum class Command { Eval, Sweep, Stability, Table, Plot };
enum class Format { Text, Csv, Json, Svg };

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitUnsupported = 3, kExitInvariant = 4 };

struct RunConfig {
    Command command = Command::Eval;
    std::string domain;
    std::string point;
    double aMin = 0.1;
    double aMax = 20.0;
    double step = 0.1;
    std::optional<Format> format; // per-command default when unset
    std::string output;           // empty: stdout
    std::uint64_t seed = 0;
    bool explain = false;
    unsigned jobs = 1;
    std::string constants;
    // stability
    std::string z0;
    double floor = 1e-6;
    std::optional<double> r1;
    double tol = 1e-3;
    std::optional<double> annulus;
    std::optional<double> sUpper;
    // table
    std::size_t maxN = 10;
    // plot
    std::string source = "sweep";
};

std::optional<Format> parse_format(const std::string& name);

/// Runs one command; all output goes to `out` (or the configured file), diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line front end. Seed precedence: --seed, then HOLOINV_SEED, then the built-in default.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace holoinv::cli
