#pragma once

#include "holoinv/bounds.hpp"
#include "holoinv/domains.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace holoinv {

inline constexpr double kDefaultExhaustionFloor = 1e-6;

/// Annuli A_{r_1} ⊂ A_{r_2} ⊂ ... exhausting the punctured disk, with a base point.
class ExhaustionSequence {
public:
    /// Radii must be positive and strictly decreasing, with |z0| > r_1.
    static ExhaustionSequence make(Complex basePoint, std::vector<double> radii);
    /// r_k = r1 * 2^{-(k-1)}, continued until r_K < floor.
    static ExhaustionSequence geometric(Complex basePoint, double r1, double floor = kDefaultExhaustionFloor);

    const std::vector<double>& radii() const noexcept { return radii_; }
    Complex basePoint() const noexcept { return basePoint_; }
    DomainDescriptor limitDomain() const { return DomainDescriptor::puncturedDisk(); }
    DomainDescriptor annulus(std::size_t k) const { return DomainDescriptor::annulus(radii_.at(k)); }
    bool reachesFloor(double floor = kDefaultExhaustionFloor) const { return radii_.back() < floor; }

    /// Fraction-free check that sampled points of A_{r_k} lie in A_{r_{k+1}}.
    bool nestedOnSamples(std::size_t samples, std::uint64_t seed) const;

private:
    ExhaustionSequence(Complex z0, std::vector<double> radii) : basePoint_(z0), radii_(std::move(radii)) {}
    Complex basePoint_;
    std::vector<double> radii_;
};

struct TrajectoryPoint {
    std::size_t k;
    double r;
    double bound;
    CertificateKind kind;
    bool operator==(const TrajectoryPoint&) const = default;
};

using Trajectory = std::vector<TrajectoryPoint>;

/// Möbius-witness squeezing lower bounds of A_{r_k} at z0.
Trajectory s_lower_trajectory(const ExhaustionSequence& seq);
/// Fridman lower bounds of A_{r_k} at z0 from slit clearance in the punctured disk.
Trajectory e_lower_trajectory(const ExhaustionSequence& seq);

/// Final value within tol of limit and |value - limit| nonincreasing over the last half.
bool convergence_assert(const Trajectory& trajectory, double limit, double tol);
bool convergence_assert(std::span<const double> values, double limit, double tol);

enum class AnnulusVerdict { Inconclusive, CertifiedConditional, NotStrict };

std::string_view to_string(AnnulusVerdict verdict);

struct AnnulusQuotientReport {
    Complex z0;
    double innerRadius;
    double rotation;           // angle removed from z0 before slit computations
    BoundInterval squeezing;
    BoundInterval fridman;
    BoundInterval quotient;
    std::optional<double> suppliedSUpper;
    AnnulusVerdict verdict;
    std::string note;
    Trajectory sEvidence;
    Trajectory eEvidence;
    bool sEvidenceConverges;

    bool operator==(const AnnulusQuotientReport&) const = default;
};

/// Bounds on m_{A_r}(z0). `sUpper` is an externally supplied upper bound for s_{A_r}(z0);
/// it is rejected if it falls below the computed lower bound.
AnnulusQuotientReport annulus_quotient_report(Complex z0, double r, std::optional<double> sUpper = std::nullopt);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

} // namespace holoinv
