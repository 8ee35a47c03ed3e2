#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace holoinv {

enum class CertificateKind { ClosedForm, MapWitness, ContainmentCheck, Monotonicity, ProductFormula, TheoremCitation };

std::string_view to_string(CertificateKind kind);
/// Inverse of to_string; throws ParseError on an unknown name.
CertificateKind certificate_kind_from_string(std::string_view name);

/// How a bound was obtained. `detail` is an ordered list of key/value pairs so
/// reports serialize deterministically.
struct Certificate {
    CertificateKind kind = CertificateKind::ClosedForm;
    std::vector<std::pair<std::string, std::string>> detail;

    Certificate() = default;
    explicit Certificate(CertificateKind k) : kind(k) {}

    Certificate& with(std::string key, std::string value);
    Certificate& with(std::string key, double value);
    std::optional<std::string> find(std::string_view key) const;

    bool operator==(const Certificate&) const = default;
};

inline constexpr double kBoundSlack = 1e-12;

/// Enclosure [lower, upper] of an invariant value in [0,1]. A missing side is unknown.
struct BoundInterval {
    std::optional<double> lower;
    std::optional<double> upper;
    bool exact = false;
    std::vector<Certificate> certificates;
    std::vector<std::string> warnings;

    static BoundInterval exactValue(double v, Certificate cert);
    static BoundInterval range(std::optional<double> lower, std::optional<double> upper, Certificate cert);
    /// [absent, 1] with no certificates: nothing is known beyond the definition.
    static BoundInterval unknown(std::string warning);

    std::optional<double> value() const { return exact ? lower : std::nullopt; }
    bool hasInformation() const { return !certificates.empty(); }

    /// Throws InvariantViolation if lower > upper + slack, values leave [0,1],
    /// exact without equal sides, or a non-exact informative bound lacks a certificate.
    void validate() const;

    bool operator==(const BoundInterval&) const = default;
};

std::string format_number(double v);

} // namespace holoinv
