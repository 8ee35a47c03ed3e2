#pragma once

#include "holoinv/bounds.hpp"
#include "holoinv/domains.hpp"
#include "holoinv/sampling.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace holoinv {

enum class MapFamily { MobiusDisk, LinearScaling, Inclusion, SlitDiskRiemann, Custom };

std::string_view to_string(MapFamily family);

/// An explicit injective holomorphic map used as evidence for a bound.
struct MapWitness {
    using Evaluator = std::function<Point(const Point&)>;

    MapFamily family = MapFamily::Custom;
    std::string label;
    std::size_t dim = 1;
    Complex center{0.0, 0.0}; // MobiusDisk: z0
    double factor = 1.0;      // LinearScaling
    double slitPoint = 0.0;   // SlitDiskRiemann: a
    Evaluator forward;
    Evaluator inverse; // may be empty
    bool injectivityChecked = false;
    /// Recorded construction (chain steps, normalization constants).
    std::vector<std::pair<std::string, std::string>> chain;

    Point operator()(const Point& z) const { return forward(z); }
    Complex operator()(Complex z) const { return forward(Point{z})[0]; }
    bool hasInverse() const { return static_cast<bool>(inverse); }

    Certificate certificate() const;
};

/// phi(w) = (w - z0) / (1 - conj(z0) w), an automorphism of the disk with phi(z0) = 0.
MapWitness mobius_disk(Complex z0);
/// w -> factor * w on C^dim.
MapWitness linear_scaling(double factor, std::size_t dim);
MapWitness inclusion(std::size_t dim);
MapWitness custom_map(std::string label, std::size_t dim, MapWitness::Evaluator forward,
                      MapWitness::Evaluator inverse = {});

/// Biholomorphism f of the unit disk onto the slit disk {|w| < 1} minus (-1, 0], with f(0) = a.
MapWitness slit_disk_riemann_map(double a);

struct InjectivityReport {
    std::size_t pairs = 0;
    std::size_t collisions = 0;
    double worstRatio = 0.0; // min |f(x)-f(y)| / |x-y| over sampled pairs
};

/// Samples pairs in the unit ball of C^dim (scaled by `radius`) and checks that
/// distinct inputs stay separated. Sets witness.injectivityChecked on success.
InjectivityReport check_injectivity(MapWitness& witness, std::size_t pairs, std::uint64_t seed,
                                    double radius = 1.0);

enum class Containment { CertifiedTrue, CertifiedFalse, SampledTrue };

struct ContainmentVerdict {
    Containment status;
    std::size_t samples = 0;
    std::string criterion;
    bool holds() const { return status != Containment::CertifiedFalse; }
    bool certified() const { return status != Containment::SampledTrue; }
};

/// Is the Kobayashi ball B^k(z, r) inside witness(unit ball)?
ContainmentVerdict verify_fridman_certificate(const DomainDescriptor& domain, std::span<const Complex> z,
                                              const MapWitness& witness, const RadiusValue& r,
                                              std::size_t samples = 4096, std::uint64_t seed = kDefaultSeed);

/// Radius of the largest origin-centred ball certified inside witness(D), where the
/// witness maps D injectively into the unit ball with z -> 0.
double squeezing_lower_from_map(const DomainDescriptor& domain, std::span<const Complex> z,
                                const MapWitness& witness);

inline constexpr int kCircleGridPoints = 4096;
inline constexpr double kCircleRefineTolerance = 1e-10;

/// Minimum of a smooth function of the angle on [0, 2π): uniform grid then
/// golden-section refinement on the bracket around the best grid point.
struct CircleMinimum {
    double angle;
    double value;
};
CircleMinimum minimize_on_circle(const std::function<double(double)>& f, int gridPoints = kCircleGridPoints,
                                 double tolerance = kCircleRefineTolerance);

struct SchwarzCheckResult {
    bool passed = true;
    std::size_t samples = 0;
    double worstExcess = -1.0; // max of l_{D2}(f(p)) - r
    std::optional<Point> counterexample;
};

/// Sampled check of f(r D1) ⊂ r D2 for a map f: D1 -> D2 with f(0) = 0.
SchwarzCheckResult schwarz_property_check(const MapWitness& witness, const DomainDescriptor& source,
                                          const DomainDescriptor& target, double r, std::size_t samples,
                                          std::uint64_t seed = kDefaultSeed);

struct ChainStep {
    std::string label;
    double lhs;
    std::string relation; // "<", "<=", "=="
    double rhs;
    bool holds;
};

struct MainTheoremReport {
    std::string domain;
    double epsilon = 0.0;
    std::optional<double> knownConstant;
    BoundInterval fridman;
    BoundInterval squeezing;
    double tanhRadius = 0.0;    // tanh r of the chosen Fridman witness
    double squeezeRadius = 0.0; // t, largest ball inside F(B^k(0, r))
    std::vector<ChainStep> steps;
    bool verified = false;
};

/// Numerically replays the argument that e_D(0) <= s_D(0) on a bounded balanced convex domain.
MainTheoremReport theorem_main1_witness(const DomainDescriptor& domain, double epsilon,
                                        std::size_t samples = 2000, std::uint64_t seed = kDefaultSeed);

} // namespace holoinv
