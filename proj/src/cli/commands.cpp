#include "holoinv/commands.hpp"

#include "holoinv/domain_spec.hpp"
#include "holoinv/errors.hpp"
#include "holoinv/invariants.hpp"
#include "holoinv/metrics.hpp"
#include "holoinv/report_io.hpp"
#include "holoinv/sampling.hpp"
#include "holoinv/stability.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace holoinv::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Format resolve_format(const RunConfig& config, Format fallback, std::initializer_list<Format> allowed, const char* command) {
    const Format f = config.format.value_or(fallback);
    if (std::find(allowed.begin(), allowed.end(), f) == allowed.end()) {
        throw UsageError(std::string("output format not supported by `") + command + "`");
    }
    return f;
}

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Format format = resolve_format(config, Format::Text, {Format::Text, Format::Csv, Format::Json}, "eval");
    if (config.domain.empty()) throw UsageError("eval needs --domain");
    if (config.point.empty()) throw UsageError("eval needs --point");
    const auto domain = parse_domain_spec(config.domain);
    const auto point = parse_point(config.point);
    if (point.size() != domain.dim()) {
        throw UsageError("point has " + std::to_string(point.size()) + " coordinates, domain has dimension " +
                         std::to_string(domain.dim()));
    }
    if (!contains(domain, point)) throw UsageError("point lies outside " + domain.describe());

    if (const auto* bc = std::get_if<BalancedConvex>(&domain.variant()); bc && !bc->gauge.ellipsoidExponents().empty()) {
        const auto convexity = check_triangle_inequality(bc->gauge, 2000, config.seed);
        if (convexity.violations > 0) {
            err << "warning: gauge triangle inequality fails on " << convexity.violations << " of " << convexity.samples
                << " samples (worst excess " << format_number(convexity.worstExcess) << ")\n";
        }
    }

    EvalReport report;
    report.domain = config.domain;
    report.point = point;
    report.squeezing = squeezing_value(domain, point);
    report.fridman = fridman_value(domain, point);
    report.quotient = quotient_from(report.squeezing, report.fridman, domain.isBalancedConvex() && is_origin(point));
    report.squeezing.validate();
    report.fridman.validate();
    report.quotient.validate();

    switch (format) {
    case Format::Json:
        out << json(report).dump(2) << '\n';
        break;
    case Format::Csv:
        write_eval_csv(out, report);
        break;
    default:
        write_eval_text(out, report, config.explain);
    }
    if (!report.squeezing.hasInformation() && !report.fridman.hasInformation() && !report.quotient.hasInformation()) {
        err << "unsupported: no certified bound is available for " << domain.describe() << " at this point\n";
        return kExitUnsupported;
    }
    return kExitOk;
}

std::vector<SweepRow> sweep_rows(const RunConfig& config) {
    if (!(config.step > 0.0) || !std::isfinite(config.step)) throw UsageError("sweep step must be positive");
    if (!(config.aMin > 0.0) || !(config.aMax >= config.aMin) || !std::isfinite(config.aMax)) {
        throw UsageError("sweep range must satisfy 0 < A-min <= A-max");
    }
    const auto count = static_cast<std::size_t>(std::floor((config.aMax - config.aMin) / config.step + 1e-9)) + 1;
    std::vector<SweepRow> rows(count);
    const auto domain = DomainDescriptor::puncturedDisk();

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failureMutex;
    auto worker = [&] {
        try {
            for (std::size_t i = next++; i < count; i = next++) {
                const double A = config.aMin + static_cast<double>(i) * config.step;
                const double a = std::exp(-A);
                const Point z{Complex{a, 0.0}};
                const auto s = squeezing_value(domain, z);
                const auto e = fridman_value(domain, z);
                const auto m = quotient_from(s, e, false);
                s.validate();
                e.validate();
                m.validate();
                rows[i] = {A, a, *s.lower, *e.lower, *m.upper};
            }
        } catch (...) {
            std::lock_guard lock(failureMutex);
            if (!failure) failure = std::current_exception();
        }
    };
    unsigned jobs = config.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.jobs;
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    {
        std::vector<std::jthread> pool;
        for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

Series sweep_series(const std::vector<SweepRow>& rows) {
    Series s{"upper bound of m on the punctured disk at a = exp(-A)", "A", "m upper bound", {}, {}, true};
    for (const auto& r : rows) {
        s.x.push_back(r.A);
        s.y.push_back(r.mUpper);
    }
    return s;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
    const Format format = resolve_format(config, Format::Csv, {Format::Csv, Format::Json, Format::Svg}, "sweep");
    const auto rows = sweep_rows(config);
    switch (format) {
    case Format::Json:
        out << json(rows).dump(2) << '\n';
        break;
    case Format::Svg:
        write_svg(out, sweep_series(rows));
        break;
    default:
        write_sweep_csv(out, rows);
    }
    return kExitOk;
}

struct StabilityRun {
    Complex z0;
    double rotation;
    double r1;
    Trajectory sLower;
    Trajectory eLower;
    double clearance;
    bool sConverges;
    bool eConstant;
};

StabilityRun stability_run(const RunConfig& config) {
    if (config.z0.empty()) throw UsageError("stability needs --z0");
    const Complex z0 = parse_complex(config.z0);
    const double modulus = std::abs(z0);
    if (!(modulus > 0.0 && modulus < 1.0)) throw UsageError("z0 must satisfy 0 < |z0| < 1");
    if (!(config.tol > 0.0)) throw UsageError("tolerance must be positive");
    const double r1 = config.r1.value_or(modulus / 2.0);
    if (!(r1 > 0.0 && r1 < modulus)) throw UsageError("z0 does not lie in the first annulus");

    StabilityRun run{z0, std::arg(z0), r1, {}, {}, slit_clearance(modulus).tanhClearance, false, true};
    const auto seq = ExhaustionSequence::geometric(Complex{modulus, 0.0}, r1, config.floor);
    run.sLower = s_lower_trajectory(seq);
    run.eLower = e_lower_trajectory(seq);
    run.sConverges = convergence_assert(run.sLower, modulus, config.tol);
    for (const auto& p : run.eLower) run.eConstant = run.eConstant && p.bound == run.clearance;
    return run;
}

Series stability_series(const StabilityRun& run) {
    Series s{"squeezing lower bound along the annulus exhaustion", "k", "s lower bound", {}, {}, false};
    for (const auto& p : run.sLower) {
        s.x.push_back(static_cast<double>(p.k));
        s.y.push_back(p.bound);
    }
    return s;
}

int cmd_annulus(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Format format = resolve_format(config, Format::Text, {Format::Text, Format::Json}, "stability --annulus");
    if (config.z0.empty()) throw UsageError("stability needs --z0");
    const Complex z0 = parse_complex(config.z0);
    const double r = *config.annulus;
    if (!(r > 0.0 && r < std::abs(z0) && std::abs(z0) < 1.0)) throw UsageError("need 0 < r < |z0| < 1");
    const auto report = annulus_quotient_report(z0, r, config.sUpper);
    report.squeezing.validate();
    report.fridman.validate();
    report.quotient.validate();
    if (report.rotation != 0.0) err << "note: z0 rotated by " << format_number(report.rotation) << " rad onto the positive axis\n";
    if (format == Format::Json) {
        out << json(report).dump(2) << '\n';
        return kExitOk;
    }
    out << "annulus inner radius: " << format_number(r) << '\n';
    out << "s: " << interval_text(report.squeezing) << '\n';
    out << "e: " << interval_text(report.fridman) << '\n';
    out << "m: " << interval_text(report.quotient) << '\n';
    out << "verdict: " << to_string(report.verdict) << '\n';
    out << "note: " << report.note << '\n';
    out << "s lower bounds converge to |z0|: " << (report.sEvidenceConverges ? "true" : "false") << '\n';
    if (config.explain) {
        for (const auto* b : {&report.squeezing, &report.fridman}) {
            for (const auto& c : b->certificates) out << certificate_text(c);
        }
    }
    return kExitOk;
}

int cmd_stability(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.annulus) return cmd_annulus(config, out, err);
    const Format format = resolve_format(config, Format::Csv, {Format::Csv, Format::Json, Format::Svg}, "stability");
    const auto run = stability_run(config);
    if (run.rotation != 0.0) err << "note: z0 rotated by " << format_number(run.rotation) << " rad onto the positive axis\n";
    switch (format) {
    case Format::Json:
        out << json{{"z0", complex_to_json(run.z0)},
                    {"rotation", run.rotation},
                    {"r1", run.r1},
                    {"floor", config.floor},
                    {"tol", config.tol},
                    {"sLower", run.sLower},
                    {"eLower", run.eLower},
                    {"sLimit", std::abs(run.z0)},
                    {"sConverges", run.sConverges},
                    {"eConstant", run.eConstant}}
                   .dump(2)
            << '\n';
        break;
    case Format::Svg:
        write_svg(out, stability_series(run));
        break;
    default: {
        Trajectory both = run.sLower;
        both.insert(both.end(), run.eLower.begin(), run.eLower.end());
        write_trajectory_csv(out, both);
        out << "# s_lower_converges=" << (run.sConverges ? "true" : "false") << '\n';
        out << "# e_lower_constant=" << (run.eConstant ? "true" : "false") << '\n';
    }
    }
    return kExitOk;
}

int cmd_table(const RunConfig& config, std::ostream& out) {
    const Format format = resolve_format(config, Format::Csv, {Format::Csv, Format::Json}, "table");
    if (!config.constants.empty()) {
        const auto constants = load_constants_file(config.constants);
        if (constants.empty()) throw UsageError("constants file lists no factors");
        std::vector<double> rhos;
        for (const auto& c : constants) rhos.push_back(c.rho);
        const double product = product_constant(rhos);
        if (format == Format::Json) {
            json factors = json::array();
            for (const auto& c : constants) factors.push_back({{"name", c.name}, {"rho", c.rho}});
            out << json{{"factors", factors}, {"product", product}}.dump(2) << '\n';
        } else {
            out << "name,rho\n";
            for (const auto& c : constants) out << c.name << ',' << format_number(c.rho) << '\n';
            out << "product," << format_number(product) << '\n';
        }
        return kExitOk;
    }
    if (config.maxN == 0) throw UsageError("--max-n must be positive");
    json rows = json::array();
    if (format == Format::Csv) out << "n,rho,hConst,eFromH,productConstant\n";
    for (std::size_t n = 1; n <= config.maxN; ++n) {
        const auto pc = polydisk_constants(n);
        const double eFromH = e_from_h(pc.hConst);
        const std::vector<double> ones(n, 1.0);
        const double product = product_constant(ones);
        if (format == Format::Json) {
            rows.push_back({{"n", n}, {"rho", pc.rho}, {"hConst", pc.hConst}, {"eFromH", eFromH}, {"productConstant", product}});
        } else {
            out << n << ',' << format_number(pc.rho) << ',' << format_number(pc.hConst) << ',' << format_number(eFromH) << ','
                << format_number(product) << '\n';
        }
    }
    if (format == Format::Json) out << rows.dump(2) << '\n';
    return kExitOk;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
    switch (config.command) {
    case Command::Eval:
        return cmd_eval(config, out, err);
    case Command::Sweep:
        return cmd_sweep(config, out);
    case Command::Stability:
        return cmd_stability(config, out, err);
    case Command::Table:
        return cmd_table(config, out);
    case Command::Plot: {
        RunConfig inner = config;
        inner.format = resolve_format(config, Format::Svg, {Format::Svg}, "plot");
        if (config.source == "sweep") {
            inner.command = Command::Sweep;
        } else if (config.source == "stability") {
            if (config.annulus) throw UsageError("plot does not render annulus reports");
            inner.command = Command::Stability;
        } else {
            throw UsageError("plot source must be `sweep` or `stability`");
        }
        return dispatch(inner, out, err);
    }
    }
    return kExitUsage;
}

} // namespace

std::optional<Format> parse_format(const std::string& name) {
    if (name == "text") return Format::Text;
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    if (name == "svg") return Format::Svg;
    return std::nullopt;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (!config.output.empty()) {
            std::ofstream file(config.output);
            if (!file) {
                err << "error: cannot open " << config.output << " for writing\n";
                return kExitUsage;
            }
            return dispatch(config, file, err);
        }
        return dispatch(config, out, err);
    } catch (const UnsupportedDomainError& e) {
        err << "unsupported: " << e.what() << '\n';
        return kExitUnsupported;
    } catch (const InvariantViolation& e) {
        err << "internal invariant violated: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

namespace {

std::optional<std::uint64_t> parse_seed(std::string_view text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

} // namespace

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Squeezing function, Fridman invariant and their quotient on model domains", "holoinv"};
    app.require_subcommand(1);

    RunConfig config;
    std::string format;
    std::string seed;
    double r1 = 0.0;
    double annulus = 0.0;
    double sUpper = 0.0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format: text, csv, json or svg");
        sub->add_option("-o,--output", config.output, "Write output to this file instead of stdout");
        sub->add_option("--seed", seed, "Seed for sampling checks (overrides HOLOINV_SEED)");
    };

    auto* eval = app.add_subcommand("eval", "Bounds for s, e and m at a point");
    eval->add_option("--domain", config.domain, "Domain spec")->required();
    eval->add_option("--point", config.point, "Comma separated coordinates, e.g. 0.3 or 0.1+0.2i,0")->required();
    eval->add_flag("--explain", config.explain, "Print certificates");
    common(eval);

    auto* sweep = app.add_subcommand("sweep", "Upper bound of m on the punctured disk over A = -log a");
    sweep->add_option("--a-min", config.aMin, "Smallest A")->capture_default_str();
    sweep->add_option("--a-max", config.aMax, "Largest A")->capture_default_str();
    sweep->add_option("--step", config.step, "Grid step in A")->capture_default_str();
    sweep->add_option("--jobs", config.jobs, "Worker threads (0: all cores)")->capture_default_str();
    common(sweep);

    auto stabilityOptions = [&](CLI::App* sub) {
        sub->add_option("--z0", config.z0, "Base point in the punctured disk");
        sub->add_option("--floor", config.floor, "Stop once the inner radius drops below this")->capture_default_str();
        sub->add_option("--r1", r1, "First inner radius (default |z0|/2)");
        sub->add_option("--tol", config.tol, "Convergence tolerance")->capture_default_str();
    };
    auto* stability = app.add_subcommand("stability", "Lower bound trajectories along annuli exhausting the punctured disk");
    stabilityOptions(stability);
    stability->get_option("--z0")->required();
    stability->add_option("--annulus", annulus, "Report bounds of m on the annulus r < |z| < 1");
    stability->add_option("--s-upper", sUpper, "Externally supplied upper bound for s on the annulus");
    stability->add_flag("--explain", config.explain, "Print certificates");
    common(stability);

    auto* table = app.add_subcommand("table", "Polydisk constants, or the product constant of listed factors");
    table->add_option("--max-n", config.maxN, "Largest polydisk dimension")->capture_default_str();
    table->add_option("--constants", config.constants, "File of `name rho` lines");
    common(table);

    auto* plot = app.add_subcommand("plot", "SVG of a sweep or a stability trajectory");
    plot->add_option("--source", config.source, "sweep or stability")->capture_default_str();
    plot->add_option("--a-min", config.aMin, "Smallest A")->capture_default_str();
    plot->add_option("--a-max", config.aMax, "Largest A")->capture_default_str();
    plot->add_option("--step", config.step, "Grid step in A")->capture_default_str();
    plot->add_option("--jobs", config.jobs, "Worker threads (0: all cores)")->capture_default_str();
    stabilityOptions(plot);
    common(plot);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << "run `holoinv --help` for usage\n";
        return kExitUsage;
    }

    const auto* active = app.get_subcommands().front();
    const std::string name = active->get_name();
    if (name == "eval") config.command = Command::Eval;
    else if (name == "sweep") config.command = Command::Sweep;
    else if (name == "stability") config.command = Command::Stability;
    else if (name == "table") config.command = Command::Table;
    else config.command = Command::Plot;

    if (active->count("--format") > 0) {
        config.format = parse_format(format);
        if (!config.format) {
            err << "usage error: unknown format `" << format << "`\n";
            return kExitUsage;
        }
    }
    if (active->get_option_no_throw("--r1") && active->count("--r1") > 0) config.r1 = r1;
    if (active->get_option_no_throw("--annulus") && active->count("--annulus") > 0) config.annulus = annulus;
    if (active->get_option_no_throw("--s-upper") && active->count("--s-upper") > 0) config.sUpper = sUpper;
    if (config.sUpper && !config.annulus) {
        err << "usage error: --s-upper requires --annulus\n";
        return kExitUsage;
    }
    if (config.command == Command::Plot && config.source == "stability" && config.z0.empty()) {
        err << "usage error: plot --source stability needs --z0\n";
        return kExitUsage;
    }

    const char* env = std::getenv("HOLOINV_SEED");
    std::optional<std::uint64_t> chosen;
    if (!seed.empty()) {
        chosen = parse_seed(seed);
        if (!chosen) {
            err << "usage error: bad --seed `" << seed << "`\n";
            return kExitUsage;
        }
    } else if (env && *env) {
        chosen = parse_seed(env);
        if (!chosen) {
            err << "usage error: bad HOLOINV_SEED `" << env << "`\n";
            return kExitUsage;
        }
    }
    config.seed = chosen.value_or(kDefaultSeed);
    return run(config, out, err);
}

} // namespace holoinv::cli
