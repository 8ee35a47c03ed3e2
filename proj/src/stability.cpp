#include "holoinv/stability.hpp"

#include "holoinv/certificates.hpp"
#include "holoinv/errors.hpp"
#include "holoinv/invariants.hpp"
#include "holoinv/metrics.hpp"
#include "holoinv/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace holoinv {

ExhaustionSequence ExhaustionSequence::make(Complex basePoint, std::vector<double> radii) {
    if (radii.empty()) throw std::invalid_argument("exhaustion sequence needs at least one radius");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0.0 && radii[k] < 1.0)) throw DomainError("exhaustion radii must lie in (0, 1)");
        if (k > 0 && !(radii[k] < radii[k - 1])) throw DomainError("exhaustion radii must be strictly decreasing");
    }
    const double m = std::abs(basePoint);
    if (!(m > radii.front() && m < 1.0)) {
        throw DomainError("base point must lie in the first annulus A_{r_1}");
    }
    return ExhaustionSequence(basePoint, std::move(radii));
}

ExhaustionSequence ExhaustionSequence::geometric(Complex basePoint, double r1, double floor) {
    if (!(floor > 0.0)) throw DomainError("exhaustion floor must be positive");
    std::vector<double> radii{r1};
    while (radii.back() >= floor) radii.push_back(radii.back() / 2.0);
    return make(basePoint, std::move(radii));
}

bool ExhaustionSequence::nestedOnSamples(std::size_t samples, std::uint64_t seed) const {
    PointSampler sampler(seed);
    for (std::size_t k = 0; k + 1 < radii_.size(); ++k) {
        const auto inner = annulus(k);
        const auto outer = annulus(k + 1);
        for (std::size_t i = 0; i < samples; ++i) {
            const double rho = sampler.uniform(radii_[k], 1.0);
            const Point z{std::polar(rho, sampler.uniform(-3.141592653589793, 3.141592653589793))};
            if (contains(inner, z) && !contains(outer, z)) return false;
        }
        // Strictness: a point between the two inner circles.
        const Point between{Complex{0.5 * (radii_[k] + radii_[k + 1]), 0.0}};
        if (contains(inner, between) || !contains(outer, between)) return false;
    }
    return true;
}

Trajectory s_lower_trajectory(const ExhaustionSequence& seq) {
    // Rotate z0 onto the positive axis; the annuli are circular.
    const Complex z0{std::abs(seq.basePoint()), 0.0};
    const auto witness = mobius_disk(z0);
    Trajectory out;
    out.reserve(seq.radii().size());
    for (std::size_t k = 0; k < seq.radii().size(); ++k) {
        const auto domain = seq.annulus(k);
        const Point z{z0};
        if (!contains(domain, z)) throw DomainError("base point lies outside A_{r_k}");
        out.push_back({k + 1, seq.radii()[k], squeezing_lower_from_map(domain, z, witness), CertificateKind::MapWitness});
    }
    return out;
}

Trajectory e_lower_trajectory(const ExhaustionSequence& seq) {
    // Rotation to the positive real axis; the annuli and the punctured disk are circular.
    const double a = std::abs(seq.basePoint());
    const double bound = slit_clearance(a).tanhClearance;
    Trajectory out;
    out.reserve(seq.radii().size());
    for (std::size_t k = 0; k < seq.radii().size(); ++k) {
        if (!(a > seq.radii()[k])) throw DomainError("base point lies outside A_{r_k}");
        out.push_back({k + 1, seq.radii()[k], bound, CertificateKind::Monotonicity});
    }
    return out;
}

bool convergence_assert(std::span<const double> values, double limit, double tol) {
    if (values.empty()) return false;
    if (!(std::abs(values.back() - limit) <= tol)) return false;
    for (std::size_t i = values.size() / 2; i + 1 < values.size(); ++i) {
        if (std::abs(values[i + 1] - limit) > std::abs(values[i] - limit)) return false;
    }
    return true;
}

bool convergence_assert(const Trajectory& trajectory, double limit, double tol) {
    std::vector<double> values;
    values.reserve(trajectory.size());
    for (const auto& p : trajectory) values.push_back(p.bound);
    return convergence_assert(values, limit, tol);
}

std::string_view to_string(AnnulusVerdict verdict) {
    switch (verdict) {
    case AnnulusVerdict::Inconclusive:
        return "inconclusive";
    case AnnulusVerdict::CertifiedConditional:
        return "certified-conditional";
    case AnnulusVerdict::NotStrict:
        return "not-strict";
    }
    return "unknown";
}

AnnulusQuotientReport annulus_quotient_report(Complex z0, double r, std::optional<double> sUpper) {
    if (!(r > 0.0 && r < std::abs(z0) && std::abs(z0) < 1.0)) {
        throw DomainError("annulus_quotient_report: need 0 < r < |z0| < 1");
    }
    const auto domain = DomainDescriptor::annulus(r);
    const Point z{z0};

    AnnulusQuotientReport report{};
    report.z0 = z0;
    report.innerRadius = r;
    report.rotation = std::arg(z0);
    report.squeezing = squeezing_value(domain, z);
    report.fridman = fridman_value(domain, z);
    report.suppliedSUpper = sUpper;

    if (sUpper) {
        if (!(*sUpper > 0.0 && *sUpper <= 1.0)) throw DomainError("supplied s upper bound must lie in (0, 1]");
        if (*sUpper < *report.squeezing.lower) {
            throw DomainError("supplied s upper bound " + format_number(*sUpper) +
                              " is below the computed lower bound " + format_number(*report.squeezing.lower));
        }
        report.squeezing.upper = *sUpper;
        report.squeezing.certificates.push_back(Certificate(CertificateKind::TheoremCitation)
                                                    .with("provenance", "externally supplied")
                                                    .with("s_upper", *sUpper));
    }
    report.quotient = quotient_from(report.squeezing, report.fridman, false);

    const auto seq = ExhaustionSequence::geometric(Complex{std::abs(z0), 0.0}, r);
    report.sEvidence = s_lower_trajectory(seq);
    report.eEvidence = e_lower_trajectory(seq);
    report.sEvidenceConverges = convergence_assert(report.sEvidence, std::abs(z0), 1e-3);

    if (!sUpper) {
        report.verdict = AnnulusVerdict::Inconclusive;
        report.note = "inconclusive for strict inequality; existence of epsilon with m_{A_r}(z0) < 1 for r < epsilon "
                      "follows from the stability of e and s along A_r increasing to the punctured disk";
    } else if (report.quotient.upper && *report.quotient.upper < 1.0) {
        report.verdict = AnnulusVerdict::CertifiedConditional;
        report.note = "m_{A_r}(z0) < 1 certified, conditional on the externally supplied s upper bound";
    } else {
        report.verdict = AnnulusVerdict::NotStrict;
        report.note = "supplied s upper bound is too weak to certify m_{A_r}(z0) < 1";
    }
    return report;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    out << "k,r,bound,certificateKind\n";
    for (const auto& p : trajectory) {
        out << p.k << ',' << format_number(p.r) << ',' << format_number(p.bound) << ',' << to_string(p.kind) << '\n';
    }
}

} // namespace holoinv
