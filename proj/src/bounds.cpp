#include "holoinv/bounds.hpp"

#include "holoinv/errors.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace holoinv {

namespace {

constexpr std::array<std::pair<CertificateKind, std::string_view>, 6> kKindNames{{
    {CertificateKind::ClosedForm, "ClosedForm"},
    {CertificateKind::MapWitness, "MapWitness"},
    {CertificateKind::ContainmentCheck, "ContainmentCheck"},
    {CertificateKind::Monotonicity, "Monotonicity"},
    {CertificateKind::ProductFormula, "ProductFormula"},
    {CertificateKind::TheoremCitation, "TheoremCitation"},
}};

} // namespace

std::string_view to_string(CertificateKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "Unknown";
}

CertificateKind certificate_kind_from_string(std::string_view name) {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) return k;
    }
    throw ParseError("unknown certificate kind: " + std::string(name));
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Certificate& Certificate::with(std::string key, std::string value) {
    detail.emplace_back(std::move(key), std::move(value));
    return *this;
}

Certificate& Certificate::with(std::string key, double value) { return with(std::move(key), format_number(value)); }

std::optional<std::string> Certificate::find(std::string_view key) const {
    for (const auto& [k, v] : detail) {
        if (k == key) return v;
    }
    return std::nullopt;
}

BoundInterval BoundInterval::exactValue(double v, Certificate cert) {
    BoundInterval b;
    b.lower = v;
    b.upper = v;
    b.exact = true;
    b.certificates.push_back(std::move(cert));
    return b;
}

BoundInterval BoundInterval::range(std::optional<double> lower, std::optional<double> upper, Certificate cert) {
    BoundInterval b;
    b.lower = lower;
    b.upper = upper;
    b.certificates.push_back(std::move(cert));
    return b;
}

BoundInterval BoundInterval::unknown(std::string warning) {
    BoundInterval b;
    b.upper = 1.0;
    b.warnings.push_back(std::move(warning));
    return b;
}

void BoundInterval::validate() const {
    auto in_unit = [](double v) { return v >= -kBoundSlack && v <= 1.0 + kBoundSlack && std::isfinite(v); };
    if (lower && !in_unit(*lower)) throw InvariantViolation("bound lower side outside [0,1]: " + format_number(*lower));
    if (upper && !in_unit(*upper)) throw InvariantViolation("bound upper side outside [0,1]: " + format_number(*upper));
    if (lower && upper && *lower > *upper + kBoundSlack) {
        throw InvariantViolation("inverted bound interval [" + format_number(*lower) + ", " + format_number(*upper) +
                                 "]");
    }
    if (exact && (!lower || !upper || *lower != *upper)) {
        throw InvariantViolation("exact bound without equal sides");
    }
    if (!exact && lower && certificates.empty()) {
        throw InvariantViolation("non-exact bound carries no certificate");
    }
}

} // namespace holoinv
