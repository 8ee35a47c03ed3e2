#include "holoinv/report_io.hpp"

#include "holoinv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace holoinv {

using nlohmann::json;

namespace {

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

} // namespace

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

void to_json(json& j, const Certificate& c) {
    json detail = json::array();
    for (const auto& [k, v] : c.detail) detail.push_back(json::array({k, v}));
    j = json{{"kind", std::string(to_string(c.kind))}, {"detail", detail}};
}

void from_json(const json& j, Certificate& c) {
    c.kind = certificate_kind_from_string(j.at("kind").get<std::string>());
    c.detail.clear();
    for (const auto& kv : j.at("detail")) c.detail.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
}

void to_json(json& j, const BoundInterval& b) {
    j = json{{"lower", optional_to_json(b.lower)},
             {"upper", optional_to_json(b.upper)},
             {"exact", b.exact},
             {"certificates", b.certificates},
             {"warnings", b.warnings}};
}

void from_json(const json& j, BoundInterval& b) {
    b.lower = optional_from_json(j.at("lower"));
    b.upper = optional_from_json(j.at("upper"));
    b.exact = j.at("exact").get<bool>();
    b.certificates = j.at("certificates").get<std::vector<Certificate>>();
    b.warnings = j.at("warnings").get<std::vector<std::string>>();
}

void to_json(json& j, const TrajectoryPoint& p) {
    j = json{{"k", p.k}, {"r", p.r}, {"bound", p.bound}, {"certificateKind", std::string(to_string(p.kind))}};
}

void from_json(const json& j, TrajectoryPoint& p) {
    p.k = j.at("k").get<std::size_t>();
    p.r = j.at("r").get<double>();
    p.bound = j.at("bound").get<double>();
    p.kind = certificate_kind_from_string(j.at("certificateKind").get<std::string>());
}

void to_json(json& j, const AnnulusQuotientReport& r) {
    j = json{{"z0", complex_to_json(r.z0)},
             {"innerRadius", r.innerRadius},
             {"rotation", r.rotation},
             {"squeezing", r.squeezing},
             {"fridman", r.fridman},
             {"quotient", r.quotient},
             {"suppliedSUpper", optional_to_json(r.suppliedSUpper)},
             {"verdict", std::string(to_string(r.verdict))},
             {"note", r.note},
             {"sEvidence", r.sEvidence},
             {"eEvidence", r.eEvidence},
             {"sEvidenceConverges", r.sEvidenceConverges}};
}

void from_json(const json& j, AnnulusQuotientReport& r) {
    r.z0 = complex_from_json(j.at("z0"));
    r.innerRadius = j.at("innerRadius").get<double>();
    r.rotation = j.at("rotation").get<double>();
    r.squeezing = j.at("squeezing").get<BoundInterval>();
    r.fridman = j.at("fridman").get<BoundInterval>();
    r.quotient = j.at("quotient").get<BoundInterval>();
    r.suppliedSUpper = optional_from_json(j.at("suppliedSUpper"));
    const auto verdict = j.at("verdict").get<std::string>();
    if (verdict == to_string(AnnulusVerdict::Inconclusive)) r.verdict = AnnulusVerdict::Inconclusive;
    else if (verdict == to_string(AnnulusVerdict::CertifiedConditional)) r.verdict = AnnulusVerdict::CertifiedConditional;
    else if (verdict == to_string(AnnulusVerdict::NotStrict)) r.verdict = AnnulusVerdict::NotStrict;
    else throw ParseError("unknown annulus verdict " + verdict);
    r.note = j.at("note").get<std::string>();
    r.sEvidence = j.at("sEvidence").get<Trajectory>();
    r.eEvidence = j.at("eEvidence").get<Trajectory>();
    r.sEvidenceConverges = j.at("sEvidenceConverges").get<bool>();
}

namespace cli {

void to_json(json& j, const EvalReport& r) {
    json point = json::array();
    for (const auto& c : r.point) point.push_back(complex_to_json(c));
    j = json{{"domain", r.domain}, {"point", point}, {"s", r.squeezing}, {"e", r.fridman}, {"m", r.quotient}};
}

void from_json(const json& j, EvalReport& r) {
    r.domain = j.at("domain").get<std::string>();
    r.point.clear();
    for (const auto& c : j.at("point")) r.point.push_back(complex_from_json(c));
    r.squeezing = j.at("s").get<BoundInterval>();
    r.fridman = j.at("e").get<BoundInterval>();
    r.quotient = j.at("m").get<BoundInterval>();
}

void to_json(json& j, const SweepRow& r) {
    j = json{{"A", r.A}, {"a", r.a}, {"sExact", r.sExact}, {"eLower", r.eLower}, {"mUpper", r.mUpper}};
}

void from_json(const json& j, SweepRow& r) {
    r.A = j.at("A").get<double>();
    r.a = j.at("a").get<double>();
    r.sExact = j.at("sExact").get<double>();
    r.eLower = j.at("eLower").get<double>();
    r.mUpper = j.at("mUpper").get<double>();
}

std::string certificate_text(const Certificate& c, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    std::ostringstream out;
    out << pad << "[certificate " << to_string(c.kind) << "]\n";
    for (const auto& [k, v] : c.detail) out << pad << "  " << k << " = " << v << '\n';
    return out.str();
}

std::string interval_text(const BoundInterval& b) {
    if (b.exact) return "exact " + format_number(*b.lower);
    auto side = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("?"); };
    return "[" + side(b.lower) + ", " + side(b.upper) + "]";
}

void write_eval_text(std::ostream& out, const EvalReport& r, bool explain) {
    out << "domain: " << r.domain << '\n';
    out << "point:";
    for (const auto& c : r.point) out << ' ' << format_number(c.real()) << (c.imag() < 0 ? "" : "+") << format_number(c.imag()) << 'i';
    out << '\n';
    auto block = [&](const char* name, const BoundInterval& b) {
        out << name << ": " << interval_text(b) << '\n';
        for (const auto& w : b.warnings) out << "  warning: " << w << '\n';
        if (explain) {
            for (const auto& c : b.certificates) out << certificate_text(c);
        }
    };
    block("s", r.squeezing);
    block("e", r.fridman);
    block("m", r.quotient);
}

void write_eval_csv(std::ostream& out, const EvalReport& r) {
    out << "quantity,lower,upper,exact,certificates\n";
    auto row = [&](const char* name, const BoundInterval& b) {
        out << name << ',' << (b.lower ? format_number(*b.lower) : "") << ',' << (b.upper ? format_number(*b.upper) : "")
            << ',' << (b.exact ? "true" : "false") << ',';
        for (std::size_t i = 0; i < b.certificates.size(); ++i) out << (i ? ";" : "") << to_string(b.certificates[i].kind);
        out << '\n';
    };
    row("s", r.squeezing);
    row("e", r.fridman);
    row("m", r.quotient);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "A,a,sExact,eLower,mUpper\n";
    for (const auto& r : rows) {
        out << format_number(r.A) << ',' << format_number(r.a) << ',' << format_number(r.sExact) << ','
            << format_number(r.eLower) << ',' << format_number(r.mUpper) << '\n';
    }
}

namespace {

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

void write_svg(std::ostream& out, const Series& series) {
    constexpr double width = 720, height = 440, left = 80, right = 24, top = 40, bottom = 56;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < std::min(series.x.size(), series.y.size()); ++i) {
        const double y = series.y[i];
        if (!std::isfinite(series.x[i]) || !std::isfinite(y) || (series.logY && y <= 0.0)) continue;
        pts.emplace_back(series.x[i], series.logY ? std::log10(y) : y);
    }
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!pts.empty()) {
        auto [xmin, xmax] = std::minmax_element(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.first < b.first; });
        auto [ymin, ymax] = std::minmax_element(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.second < b.second; });
        x0 = xmin->first;
        x1 = xmax->first;
        y0 = ymin->second;
        y1 = ymax->second;
    }
    if (series.logY) {
        y0 = std::floor(y0);
        y1 = std::ceil(y1);
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (width - left - right); };
    auto sy = [&](double y) { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
        << escape_xml(series.title) << "</text>\n";
    out << "<g stroke=\"black\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
        << height - bottom << "\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom << "\"/>\n";
    out << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double x = x0 + (x1 - x0) * i / 5.0;
        out << "<text x=\"" << sx(x) << "\" y=\"" << height - bottom + 16 << "\" text-anchor=\"middle\">"
            << short_number(x) << "</text>\n";
    }
    if (series.logY) {
        for (double e = y0; e <= y1 + 1e-9; e += std::max(1.0, std::ceil((y1 - y0) / 10.0))) {
            out << "<text x=\"" << left - 6 << "\" y=\"" << sy(e) + 4 << "\" text-anchor=\"end\">1e" << short_number(e)
                << "</text>\n";
        }
    } else {
        for (int i = 0; i <= 5; ++i) {
            const double y = y0 + (y1 - y0) * i / 5.0;
            out << "<text x=\"" << left - 6 << "\" y=\"" << sy(y) + 4 << "\" text-anchor=\"end\">" << short_number(y)
                << "</text>\n";
        }
    }
    out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 14 << "\" text-anchor=\"middle\">"
        << escape_xml(series.xLabel) << "</text>\n";
    out << "<text x=\"16\" y=\"" << (top + height - bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (top + height - bottom) / 2 << ")\">" << escape_xml(series.yLabel) << "</text>\n";
    out << "</g>\n";
    out << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out << (i ? " " : "") << short_number(sx(pts[i].first)) << ',' << short_number(sy(pts[i].second));
    }
    out << "\"/>\n</svg>\n";
}

} // namespace cli
} // namespace holoinv
