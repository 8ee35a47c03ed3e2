#include "holoinv/domains.hpp"

#include "holoinv/errors.hpp"
#include "holoinv/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <queue>
#include <sstream>

namespace holoinv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_dim(std::size_t expected, std::size_t got, const char* what) {
    if (expected != got) {
        std::ostringstream msg;
        msg << what << ": point has dimension " << got << ", domain has dimension " << expected;
        throw DimensionMismatchError(msg.str());
    }
}

double max_modulus(std::span<const Complex> z) {
    double m = 0.0;
    for (const auto& c : z) m = std::max(m, std::abs(c));
    return m;
}

} // namespace

namespace detail {
struct RadiiCache {
    std::once_flag once;
    std::optional<EuclideanRadii> value;
};
} // namespace detail

// ---------------------------------------------------------------------------
// Gauge

Gauge::Gauge(std::string name, std::size_t dim, Evaluator evaluate, bool moduliOnly)
    : name_(std::move(name)), dim_(dim), evaluate_(std::move(evaluate)), moduliOnly_(moduliOnly),
      cache_(std::make_shared<detail::RadiiCache>()) {
    if (dim_ == 0) throw std::invalid_argument("gauge dimension must be positive");
    if (!evaluate_) throw std::invalid_argument("gauge evaluator is empty");
}

Gauge Gauge::complexEllipsoid(std::vector<double> exponents) {
    if (exponents.empty()) throw std::invalid_argument("ellipsoid needs at least one exponent");
    for (double p : exponents) {
        if (!(p >= 0.5) || !std::isfinite(p)) {
            throw std::invalid_argument("ellipsoid exponents must be finite and >= 1/2 (convexity threshold)");
        }
    }
    std::ostringstream name;
    name << "ellipsoid:";
    for (std::size_t i = 0; i < exponents.size(); ++i) name << (i ? "," : "") << exponents[i];
    auto exps = exponents;
    Gauge g(name.str(), exponents.size(),
            [exps](std::span<const Complex> z) { return ellipsoid_gauge(z, exps); }, true);
    g.exponents_ = std::move(exponents);
    return g;
}

double Gauge::operator()(std::span<const Complex> z) const {
    require_dim(dim_, z.size(), "gauge");
    return evaluate_(z);
}

double ellipsoid_defining_sum(std::span<const Complex> z, std::span<const double> exponents) {
    double sum = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) sum += std::pow(std::abs(z[i]), 2.0 * exponents[i]);
    return sum;
}

double ellipsoid_gauge(std::span<const Complex> z, std::span<const double> exponents) {
    if (z.size() != exponents.size()) throw DimensionMismatchError("ellipsoid gauge: dimension mismatch");
    const double m = max_modulus(z);
    if (m == 0.0) return 0.0;

    // Normalise by the largest modulus so the root lies in [1, n^{1/(2 p_min)}].
    std::vector<double> moduli(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) moduli[i] = std::abs(z[i]) / m;
    const double pMin = *std::min_element(exponents.begin(), exponents.end());

    auto excess = [&](double s) {
        double sum = 0.0;
        for (std::size_t i = 0; i < moduli.size(); ++i) sum += std::pow(moduli[i] / s, 2.0 * exponents[i]);
        return sum - 1.0;
    };

    double lo = 1.0;
    double hi = std::pow(static_cast<double>(z.size()), 1.0 / (2.0 * pMin));
    if (excess(hi) >= 0.0) return m * hi; // n == 1
    double mid = lo;
    for (int it = 0; it < kGaugeBisectionMaxIterations; ++it) {
        mid = 0.5 * (lo + hi);
        const double f = excess(mid);
        if (std::abs(f) <= kGaugeBisectionTolerance || mid == lo || mid == hi) break;
        (f > 0.0 ? lo : hi) = mid;
    }
    return m * mid;
}

// ---------------------------------------------------------------------------
// DomainDescriptor

DomainDescriptor DomainDescriptor::unitDisk() { return DomainDescriptor(UnitDisk{}); }

DomainDescriptor DomainDescriptor::unitBall(std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("ball dimension must be positive");
    return DomainDescriptor(UnitBall{dim});
}

DomainDescriptor DomainDescriptor::polydisk(std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("polydisk dimension must be positive");
    return DomainDescriptor(Polydisk{dim});
}

DomainDescriptor DomainDescriptor::puncturedDisk() { return DomainDescriptor(PuncturedDisk{}); }

DomainDescriptor DomainDescriptor::annulus(double innerRadius) {
    if (!(innerRadius > 0.0 && innerRadius < 1.0)) {
        throw DomainError("annulus inner radius must lie strictly between 0 and 1");
    }
    return DomainDescriptor(Annulus{innerRadius});
}

DomainDescriptor DomainDescriptor::balancedConvex(Gauge gauge) { return DomainDescriptor(BalancedConvex{std::move(gauge)}); }

DomainDescriptor DomainDescriptor::ellipsoid(std::vector<double> exponents) {
    return balancedConvex(Gauge::complexEllipsoid(std::move(exponents)));
}

DomainDescriptor DomainDescriptor::product(std::vector<DomainDescriptor> factors) {
    if (factors.empty()) throw std::invalid_argument("product needs at least one factor");
    return DomainDescriptor(Product{std::move(factors)});
}

std::size_t DomainDescriptor::dim() const {
    return std::visit(overloaded{
                          [](const UnitDisk&) -> std::size_t { return 1; },
                          [](const UnitBall& b) -> std::size_t { return b.dim; },
                          [](const Polydisk& p) -> std::size_t { return p.dim; },
                          [](const PuncturedDisk&) -> std::size_t { return 1; },
                          [](const Annulus&) -> std::size_t { return 1; },
                          [](const BalancedConvex& c) -> std::size_t { return c.gauge.dim(); },
                          [](const Product& p) -> std::size_t {
                              std::size_t n = 0;
                              for (const auto& f : p.factors) n += f.dim();
                              return n;
                          },
                      },
                      variant_);
}

bool DomainDescriptor::isBalanced() const {
    return std::visit(overloaded{
                          [](const PuncturedDisk&) { return false; },
                          [](const Annulus&) { return false; },
                          [](const Product& p) {
                              return std::all_of(p.factors.begin(), p.factors.end(),
                                                 [](const auto& f) { return f.isBalanced(); });
                          },
                          [](const auto&) { return true; },
                      },
                      variant_);
}

bool DomainDescriptor::isConvex() const {
    // BalancedConvex gauges are restricted to convex ones at construction
    // (ellipsoid exponents >= 1/2); user gauges are taken at their word.
    return std::visit(overloaded{
                          [](const PuncturedDisk&) { return false; },
                          [](const Annulus&) { return false; },
                          [](const Product& p) {
                              return std::all_of(p.factors.begin(), p.factors.end(),
                                                 [](const auto& f) { return f.isConvex(); });
                          },
                          [](const auto&) { return true; },
                      },
                      variant_);
}

bool DomainDescriptor::isHomogeneous() const {
    return std::visit(overloaded{
                          [](const UnitDisk&) { return true; },
                          [](const UnitBall&) { return true; },
                          [](const Polydisk&) { return true; },
                          [](const Product& p) {
                              return std::all_of(p.factors.begin(), p.factors.end(),
                                                 [](const auto& f) { return f.isHomogeneous(); });
                          },
                          [](const auto&) { return false; },
                      },
                      variant_);
}

std::string DomainDescriptor::describe() const {
    return std::visit(overloaded{
                          [](const UnitDisk&) { return std::string("disk"); },
                          [](const UnitBall& b) { return "ball:" + std::to_string(b.dim); },
                          [](const Polydisk& p) { return "polydisk:" + std::to_string(p.dim); },
                          [](const PuncturedDisk&) { return std::string("punctured-disk"); },
                          [](const Annulus& a) {
                              std::ostringstream s;
                              s.precision(12);
                              s << "annulus:" << a.innerRadius;
                              return s.str();
                          },
                          [](const BalancedConvex& c) { return c.gauge.name(); },
                          [](const Product& p) {
                              std::string s = "product(";
                              for (std::size_t i = 0; i < p.factors.size(); ++i) {
                                  s += (i ? "," : "") + p.factors[i].describe();
                              }
                              return s + ")";
                          },
                      },
                      variant_);
}

// ---------------------------------------------------------------------------
// Gauge evaluation and membership

double gauge_eval(const DomainDescriptor& domain, std::span<const Complex> z) {
    require_dim(domain.dim(), z.size(), "gauge_eval");
    return std::visit(overloaded{
                          [&](const UnitDisk&) { return std::abs(z[0]); },
                          [&](const UnitBall&) { return euclidean_norm(z); },
                          [&](const Polydisk&) { return max_modulus(z); },
                          [&](const BalancedConvex& c) { return c.gauge(z); },
                          [&](const Product& p) {
                              // The product of balanced domains has gauge max_i l_{D_i}.
                              double g = 0.0;
                              std::size_t offset = 0;
                              for (const auto& f : p.factors) {
                                  g = std::max(g, gauge_eval(f, z.subspan(offset, f.dim())));
                                  offset += f.dim();
                              }
                              return g;
                          },
                          [&](const auto&) -> double {
                              throw UnsupportedDomainError("gauge_eval: " + domain.describe() +
                                                           " is not balanced; no Minkowski function");
                          },
                      },
                      domain.variant());
}

bool contains(const DomainDescriptor& domain, std::span<const Complex> z) {
    require_dim(domain.dim(), z.size(), "contains");
    return std::visit(overloaded{
                          [&](const PuncturedDisk&) {
                              const double m = std::abs(z[0]);
                              return m > 0.0 && m < 1.0;
                          },
                          [&](const Annulus& a) {
                              const double m = std::abs(z[0]);
                              return m > a.innerRadius && m < 1.0;
                          },
                          [&](const Product& p) {
                              std::size_t offset = 0;
                              for (const auto& f : p.factors) {
                                  if (!contains(f, z.subspan(offset, f.dim()))) return false;
                                  offset += f.dim();
                              }
                              return true;
                          },
                          [&](const auto&) { return gauge_eval(domain, z) < 1.0; },
                      },
                      domain.variant());
}

bool is_origin(std::span<const Complex> z) {
    return std::all_of(z.begin(), z.end(), [](const Complex& c) { return c == Complex{0.0, 0.0}; });
}

// ---------------------------------------------------------------------------
// Radii

RadiusValue RadiusValue::fromHyperbolic(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("hyperbolic radius must be finite and nonnegative");
    return RadiusValue(r, std::tanh(r));
}

RadiusValue RadiusValue::fromTanh(double t) {
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("tanh radius must lie in [0, 1)");
    return RadiusValue(std::atanh(t), t);
}

FridmanH h_from_e(double e) {
    if (!(e > 0.0) || e > 1.0) throw DomainError("Fridman value must lie in (0, 1]");
    if (e == 1.0) return {0.0, true};
    return {1.0 / std::atanh(e), false};
}

double e_from_h(double h) {
    if (!(h >= 0.0) || std::isinf(h)) throw DomainError("h must be finite and nonnegative");
    if (h == 0.0) return 1.0;
    return std::tanh(1.0 / h);
}

// ---------------------------------------------------------------------------
// Euclidean radii

namespace {

/// Unit vector in the nonnegative orthant of R^n from hyperspherical angles.
Point orthant_point(std::span<const double> angles) {
    const std::size_t n = angles.size() + 1;
    Point p(n);
    double sinProd = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        p[i] = sinProd * std::cos(angles[i]);
        sinProd *= std::sin(angles[i]);
    }
    p[n - 1] = sinProd;
    return p;
}

struct AngleBox {
    std::vector<double> center;
    std::vector<double> half;
    double value;
    double bound;
    double radius() const {
        double s = 0.0;
        for (double h : half) s += h * h;
        return std::sqrt(s);
    }
};

constexpr double kRadiiRelTol = 1e-7;
constexpr std::size_t kRadiiMaxEvals = 60000;

struct SphereExtreme {
    double attained; // value of l at `where`
    double bound;    // certified bound on the true extreme
    Point where;
};

/// Branch and bound for the max (sign = +1) or min (sign = -1) of a moduli-only
/// gauge over the unit sphere. The gauge is a norm depending on moduli only, so
/// |l(u) - l(v)| <= lipschitz * |u - v|, and the hyperspherical metric is
/// dominated by the Euclidean metric on the angles.
SphereExtreme sphere_extreme(const Gauge& gauge, int sign, double lipschitz) {
    const std::size_t angleCount = gauge.dim() - 1;
    const double quarter = std::numbers::pi / 2.0;
    auto eval = [&](const std::vector<double>& angles) { return gauge(orthant_point(angles)); };
    auto boxBound = [&](double value, double radius) { return sign * value + lipschitz * radius; };
    auto cmp = [](const AngleBox& a, const AngleBox& b) { return a.bound < b.bound; };
    std::priority_queue<AngleBox, std::vector<AngleBox>, decltype(cmp)> queue(cmp);

    // Seed grid.
    const std::size_t seedPerAngle = angleCount == 1 ? 64 : 8;
    const double seedHalf = quarter / (2.0 * static_cast<double>(seedPerAngle));
    std::vector<std::size_t> idx(angleCount, 0);
    std::size_t evals = 0;
    SphereExtreme best{0.0, 0.0, {}};
    double bestSigned = -std::numeric_limits<double>::infinity();
    auto consider = [&](AngleBox box) {
        ++evals;
        const double signedValue = sign * box.value;
        if (signedValue > bestSigned) {
            bestSigned = signedValue;
            best.attained = box.value;
            best.where = orthant_point(box.center);
        }
        box.bound = boxBound(box.value, box.radius());
        queue.push(std::move(box));
    };
    while (true) {
        AngleBox box{std::vector<double>(angleCount), std::vector<double>(angleCount, seedHalf), 0.0, 0.0};
        for (std::size_t i = 0; i < angleCount; ++i) box.center[i] = seedHalf * (2.0 * static_cast<double>(idx[i]) + 1.0);
        box.value = eval(box.center);
        consider(std::move(box));
        std::size_t i = 0;
        while (i < angleCount && ++idx[i] == seedPerAngle) idx[i++] = 0;
        if (i == angleCount) break;
    }

    while (!queue.empty() && evals < kRadiiMaxEvals) {
        if (queue.top().bound - bestSigned <= kRadiiRelTol * std::abs(bestSigned)) break;
        AngleBox box = queue.top();
        queue.pop();
        const auto widest = static_cast<std::size_t>(
            std::distance(box.half.begin(), std::max_element(box.half.begin(), box.half.end())));
        const double h = box.half[widest] / 2.0;
        for (double offset : {-h, h}) {
            AngleBox child{box.center, box.half, 0.0, 0.0};
            child.center[widest] += offset;
            child.half[widest] = h;
            child.value = eval(child.center);
            consider(std::move(child));
        }
    }
    const double topBound = queue.empty() ? bestSigned : std::max(queue.top().bound, bestSigned);
    best.bound = sign * topBound;
    return best;
}

/// Certified inner/outer radii of a moduli-only gauge.
EuclideanRadii modulus_gauge_radii(const Gauge& gauge) {
    const std::size_t n = gauge.dim();
    if (n == 1) {
        const Point e1{Complex{1.0, 0.0}};
        const double v = gauge(e1);
        return {1.0 / v, 1.0 / v, 1.0 / v, true, e1};
    }
    // l(u) <= sum |u_i| l(e_i) <= sqrt(n) max_i l(e_i) on the unit sphere.
    double axisMax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Point e(n, Complex{0.0, 0.0});
        e[i] = 1.0;
        axisMax = std::max(axisMax, gauge(e));
    }
    const double crude = std::sqrt(static_cast<double>(n)) * axisMax;
    const auto maxExt = sphere_extreme(gauge, +1, crude);
    const auto minExt = sphere_extreme(gauge, -1, maxExt.bound);
    const double minLower = std::max(minExt.bound, 0.0);
    return {1.0 / maxExt.bound,
            minLower > 0.0 ? 1.0 / minLower : std::numeric_limits<double>::infinity(),
            1.0 / minExt.attained, false, maxExt.where};
}

} // namespace

const EuclideanRadii& Gauge::sphereRadii() const {
    if (!moduliOnly_) {
        throw UnsupportedDomainError("gauge " + name_ + " is not moduli-only; Euclidean radii unavailable");
    }
    std::call_once(cache_->once, [this] { cache_->value = modulus_gauge_radii(*this); });
    return *cache_->value;
}

namespace {

Point embed(std::size_t total, std::size_t offset, std::span<const Complex> part) {
    Point p(total, Complex{0.0, 0.0});
    std::copy(part.begin(), part.end(), p.begin() + static_cast<std::ptrdiff_t>(offset));
    return p;
}

} // namespace

EuclideanRadii euclidean_radii(const DomainDescriptor& domain) {
    const std::size_t n = domain.dim();
    Point e1(n, Complex{0.0, 0.0});
    e1[0] = 1.0;
    return std::visit(
        overloaded{
            [&](const UnitDisk&) { return EuclideanRadii{1.0, 1.0, 1.0, true, e1}; },
            [&](const UnitBall&) { return EuclideanRadii{1.0, 1.0, 1.0, true, e1}; },
            [&](const Polydisk& p) {
                const double r = std::sqrt(static_cast<double>(p.dim));
                return EuclideanRadii{1.0, r, r, true, e1};
            },
            [&](const BalancedConvex& c) { return c.gauge.sphereRadii(); },
            [&](const Product& p) {
                // t B ⊂ D_1 x ... x D_m iff t <= min inner_i; the product sits in the ball
                // of radius sqrt(sum outer_i^2).
                EuclideanRadii out{std::numeric_limits<double>::infinity(), 0.0, 0.0, true, {}};
                std::size_t offset = 0;
                for (const auto& f : p.factors) {
                    const auto fr = euclidean_radii(f);
                    if (fr.inner < out.inner) {
                        out.inner = fr.inner;
                        out.innerDirection = embed(n, offset, fr.innerDirection);
                    }
                    out.outer += fr.outer * fr.outer;
                    out.outerAttained += fr.outerAttained * fr.outerAttained;
                    out.exact = out.exact && fr.exact;
                    offset += f.dim();
                }
                out.outer = std::sqrt(out.outer);
                out.outerAttained = std::sqrt(out.outerAttained);
                return out;
            },
            [&](const auto&) -> EuclideanRadii {
                throw UnsupportedDomainError("euclidean_radii: " + domain.describe() + " is not balanced");
            },
        },
        domain.variant());
}

ConvexityReport check_triangle_inequality(const Gauge& gauge, std::size_t samples, std::uint64_t seed) {
    PointSampler sampler(seed);
    ConvexityReport report;
    report.worstExcess = -std::numeric_limits<double>::infinity();
    const std::size_t n = gauge.dim();
    for (std::size_t s = 0; s < samples; ++s) {
        const Point x = sampler.inBall(n, 2.0);
        const Point y = sampler.inBall(n, 2.0);
        Point sum(n);
        for (std::size_t i = 0; i < n; ++i) sum[i] = x[i] + y[i];
        const double lx = gauge(x);
        const double ly = gauge(y);
        const double excess = gauge(sum) - lx - ly;
        report.worstExcess = std::max(report.worstExcess, excess);
        if (excess > 1e-10 * std::max(1.0, lx + ly)) ++report.violations;
        ++report.samples;
    }
    return report;
}

} // namespace holoinv
