#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace holoinv {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;

/// Certified Euclidean radii of a bounded balanced domain:
/// inner * B is contained in D, and D is contained in outer * B.
struct EuclideanRadii {
    double inner;
    double outer;
    /// A radius actually reached by boundary points, so outerAttained <= true circumradius <= outer.
    double outerAttained;
    bool exact;
    /// Unit vector along which l_D is (approximately) maximal, i.e. where the
    /// inscribed ball touches the boundary.
    Point innerDirection;
};

namespace detail {
struct RadiiCache;
}

/// Minkowski function l_D of a balanced domain D = {l_D < 1}.
class Gauge {
public:
    using Evaluator = std::function<double(std::span<const Complex>)>;

    /// `moduliOnly` declares that the gauge depends on |z_1|, ..., |z_n| only
    /// (Reinhardt domains); euclidean radii are only available for those.
    Gauge(std::string name, std::size_t dim, Evaluator evaluate, bool moduliOnly = false);

    /// Gauge of the complex ellipsoid {sum |z_i|^(2 p_i) < 1}. Exponents must be >= 1/2.
    /// Evaluation solves sum |z_i / s|^(2 p_i) = 1 for s by bisection.
    static Gauge complexEllipsoid(std::vector<double> exponents);

    double operator()(std::span<const Complex> z) const;

    std::size_t dim() const noexcept { return dim_; }
    const std::string& name() const noexcept { return name_; }

    /// Non-empty only for gauges built by complexEllipsoid().
    const std::vector<double>& ellipsoidExponents() const noexcept { return exponents_; }

    bool moduliOnly() const noexcept { return moduliOnly_; }

    /// Extremes of the gauge on the unit sphere, computed once per gauge (copies share it).
    const EuclideanRadii& sphereRadii() const;

private:
    std::string name_;
    std::size_t dim_;
    Evaluator evaluate_;
    std::vector<double> exponents_;
    bool moduliOnly_;
    std::shared_ptr<detail::RadiiCache> cache_;
};

inline constexpr double kGaugeBisectionTolerance = 1e-12;
inline constexpr int kGaugeBisectionMaxIterations = 200;

/// Root of sum |z_i/s|^(2 p_i) = 1. Exposed so tests can substitute the result back.
double ellipsoid_gauge(std::span<const Complex> z, std::span<const double> exponents);

/// Left-hand side of the ellipsoid defining equation, sum |z_i|^(2 p_i).
double ellipsoid_defining_sum(std::span<const Complex> z, std::span<const double> exponents);

enum class DomainKind { UnitDisk, UnitBall, Polydisk, PuncturedDisk, Annulus, BalancedConvex, Product };

class DomainDescriptor;

struct UnitDisk {};
struct UnitBall {
    std::size_t dim;
};
struct Polydisk {
    std::size_t dim;
};
struct PuncturedDisk {};
struct Annulus {
    double innerRadius;
};
struct BalancedConvex {
    Gauge gauge;
};
struct Product {
    std::vector<DomainDescriptor> factors;
};

class DomainDescriptor {
public:
    using Variant = std::variant<UnitDisk, UnitBall, Polydisk, PuncturedDisk, Annulus, BalancedConvex, Product>;

    static DomainDescriptor unitDisk();
    static DomainDescriptor unitBall(std::size_t dim);
    static DomainDescriptor polydisk(std::size_t dim);
    static DomainDescriptor puncturedDisk();
    static DomainDescriptor annulus(double innerRadius);
    static DomainDescriptor balancedConvex(Gauge gauge);
    static DomainDescriptor ellipsoid(std::vector<double> exponents);
    static DomainDescriptor product(std::vector<DomainDescriptor> factors);

    DomainKind kind() const noexcept { return static_cast<DomainKind>(variant_.index()); }
    const Variant& variant() const noexcept { return variant_; }

    std::size_t dim() const;
    bool isBalanced() const;
    bool isConvex() const;
    /// Disk, ball, polydisk and products of those. Invariants are constant on these.
    bool isHomogeneous() const;
    bool isBalancedConvex() const { return isBalanced() && isConvex(); }

    std::string describe() const;

private:
    explicit DomainDescriptor(Variant v) : variant_(std::move(v)) {}
    Variant variant_;
};

/// l_D(z). Throws UnsupportedDomainError for the punctured disk and annuli.
double gauge_eval(const DomainDescriptor& domain, std::span<const Complex> z);

/// Exact membership. Throws DimensionMismatchError on a point of the wrong dimension.
bool contains(const DomainDescriptor& domain, std::span<const Complex> z);

bool is_origin(std::span<const Complex> z);

/// Hyperbolic radius r together with tanh(r).
class RadiusValue {
public:
    static RadiusValue fromHyperbolic(double r);
    /// t in [0,1).
    static RadiusValue fromTanh(double t);

    double hyperbolic() const noexcept { return hyperbolic_; }
    double tanhValue() const noexcept { return tanh_; }

private:
    RadiusValue(double r, double t) : hyperbolic_(r), tanh_(t) {}
    double hyperbolic_;
    double tanh_;
};

struct FridmanH {
    double h;
    bool degenerate; // e == 1, h reported as 0
};

/// h = 1/artanh(e) for e in (0,1]; e = 1 gives the degenerate h = 0.
FridmanH h_from_e(double e);
/// e = tanh(1/h); h = 0 maps back to e = 1.
double e_from_h(double h);

EuclideanRadii euclidean_radii(const DomainDescriptor& domain);

struct ConvexityReport {
    std::size_t samples = 0;
    std::size_t violations = 0;
    double worstExcess = 0.0; // max of l(x+y) - l(x) - l(y)
};

/// Sample-checks the triangle inequality of a gauge.
ConvexityReport check_triangle_inequality(const Gauge& gauge, std::size_t samples, std::uint64_t seed);

} // namespace holoinv
