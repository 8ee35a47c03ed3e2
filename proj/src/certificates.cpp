#include "holoinv/certificates.hpp"

#include "holoinv/errors.hpp"
#include "holoinv/invariants.hpp"
#include "holoinv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace holoinv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kWitnessNormalizationTol = 1e-12;
// A few ulps of slack for comparisons between separately rounded closed forms.
constexpr double kUlpSlack = 8.0 * std::numeric_limits<double>::epsilon();

const Complex kI{0.0, 1.0};

void require_dim1(const Point& p, const char* what) {
    if (p.size() != 1) throw DimensionMismatchError(std::string(what) + ": expected a point in C");
}

/// Slit disk -> unit disk chain, before normalization:
/// zeta -> sqrt(zeta) (right half-disk) -> i s (upper half-disk) -> (1+v)/(1-v) (first quadrant)
///      -> q^2 (upper half-plane) -> (u - i)/(u + i) (disk) -> -i d (rotate so (0,1) lands on the reals).
Complex slit_chain(Complex zeta) {
    const Complex s = std::sqrt(zeta);
    const Complex v = kI * s;
    const Complex q = (1.0 + v) / (1.0 - v);
    const Complex u = q * q;
    const Complex d = (u - kI) / (u + kI);
    return -kI * d;
}

Complex slit_chain_inverse(Complex g) {
    const Complex d = kI * g;
    const Complex u = kI * (1.0 + d) / (1.0 - d);
    const Complex q = std::sqrt(u);
    const Complex v = (q - 1.0) / (q + 1.0);
    const Complex s = -kI * v;
    return s * s;
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - invPhi * (hi - lo);
    double d = lo + invPhi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > tol) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invPhi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invPhi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::string_view to_string(MapFamily family) {
    switch (family) {
    case MapFamily::MobiusDisk:
        return "MobiusDisk";
    case MapFamily::LinearScaling:
        return "LinearScaling";
    case MapFamily::Inclusion:
        return "Inclusion";
    case MapFamily::SlitDiskRiemann:
        return "SlitDiskRiemann";
    case MapFamily::Custom:
        return "Custom";
    }
    return "Unknown";
}

Certificate MapWitness::certificate() const {
    Certificate c(CertificateKind::MapWitness);
    c.with("family", std::string(to_string(family)));
    if (!label.empty()) c.with("label", label);
    for (const auto& [k, v] : chain) c.with(k, v);
    c.with("injectivity_checked", injectivityChecked ? "yes" : "no");
    return c;
}

// ---------------------------------------------------------------------------
// Map families

MapWitness mobius_disk(Complex z0) {
    if (!(std::abs(z0) < 1.0)) throw DomainError("mobius_disk: z0 must lie in the open unit disk");
    MapWitness w;
    w.family = MapFamily::MobiusDisk;
    w.label = "phi(w) = (w - z0) / (1 - conj(z0) w)";
    w.center = z0;
    w.forward = [z0](const Point& p) {
        require_dim1(p, "mobius_disk");
        return Point{(p[0] - z0) / (1.0 - std::conj(z0) * p[0])};
    };
    w.inverse = [z0](const Point& p) {
        require_dim1(p, "mobius_disk inverse");
        return Point{(p[0] + z0) / (1.0 + std::conj(z0) * p[0])};
    };
    // Disk automorphisms are injective.
    w.injectivityChecked = true;
    w.chain = {{"z0_re", format_number(z0.real())}, {"z0_im", format_number(z0.imag())}};
    return w;
}

MapWitness linear_scaling(double factor, std::size_t dim) {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw DomainError("linear_scaling: factor must be positive");
    MapWitness w;
    w.family = MapFamily::LinearScaling;
    w.label = "w -> t w";
    w.dim = dim;
    w.factor = factor;
    w.forward = [factor](const Point& p) { return scaled(p, factor); };
    w.inverse = [factor](const Point& p) { return scaled(p, 1.0 / factor); };
    w.injectivityChecked = true;
    w.chain = {{"factor", format_number(factor)}, {"dim", std::to_string(dim)}};
    return w;
}

MapWitness inclusion(std::size_t dim) {
    MapWitness w = linear_scaling(1.0, dim);
    w.family = MapFamily::Inclusion;
    w.label = "identity";
    return w;
}

MapWitness custom_map(std::string label, std::size_t dim, MapWitness::Evaluator forward,
                      MapWitness::Evaluator inverse) {
    MapWitness w;
    w.family = MapFamily::Custom;
    w.label = std::move(label);
    w.dim = dim;
    w.forward = std::move(forward);
    w.inverse = std::move(inverse);
    return w;
}

MapWitness slit_disk_riemann_map(double a) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("slit_disk_riemann_map: a must lie in (0, 1)");
    // The chain sends (0,1) into the real diameter, so the normalizing automorphism
    // w -> (w + c)/(1 + c w) has real c = chain(a).
    const Complex ca = slit_chain(Complex{a, 0.0});
    const double c = ca.real();

    MapWitness w;
    w.family = MapFamily::SlitDiskRiemann;
    w.label = "unit disk onto disk minus (-1,0]";
    w.slitPoint = a;
    w.forward = [c](const Point& p) {
        require_dim1(p, "slit_disk_riemann_map");
        const Complex shifted = (p[0] + c) / (1.0 + c * p[0]);
        return Point{slit_chain_inverse(shifted)};
    };
    w.inverse = [c](const Point& p) {
        require_dim1(p, "slit_disk_riemann_map inverse");
        const Complex g = slit_chain(p[0]);
        return Point{(g - c) / (1.0 - c * g)};
    };
    w.chain = {
        {"a", format_number(a)},
        {"step1", "zeta -> sqrt(zeta), principal branch, cut (-inf,0]: slit disk -> right half-disk"},
        {"step2", "s -> i s: right half-disk -> upper half-disk"},
        {"step3", "v -> (1+v)/(1-v): upper half-disk -> first quadrant"},
        {"step4", "q -> q^2: first quadrant -> upper half-plane"},
        {"step5", "u -> (u-i)/(u+i): upper half-plane -> unit disk"},
        {"step6", "d -> -i d: rotation putting (0,1) on the real diameter"},
        {"normalization", "w -> (w + c)/(1 + c w), c = chain(a)"},
        {"c", format_number(c)},
        {"c_imag_residual", format_number(ca.imag())},
    };
    return w;
}

InjectivityReport check_injectivity(MapWitness& witness, std::size_t pairs, std::uint64_t seed, double radius) {
    PointSampler sampler(seed);
    InjectivityReport report;
    report.worstRatio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pairs; ++i) {
        const Point x = sampler.inBall(witness.dim, radius);
        const Point y = sampler.inBall(witness.dim, radius);
        Point dx(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) dx[k] = x[k] - y[k];
        const double sep = euclidean_norm(dx);
        if (sep == 0.0) continue;
        const Point fx = witness(x);
        const Point fy = witness(y);
        Point df(fx.size());
        for (std::size_t k = 0; k < fx.size(); ++k) df[k] = fx[k] - fy[k];
        const double ratio = euclidean_norm(df) / sep;
        report.worstRatio = std::min(report.worstRatio, ratio);
        if (!(ratio > 1e-12)) ++report.collisions;
        ++report.pairs;
    }
    if (report.collisions == 0) witness.injectivityChecked = true;
    return report;
}

// ---------------------------------------------------------------------------
// Circle minimization

CircleMinimum minimize_on_circle(const std::function<double(double)>& f, int gridPoints, double tolerance) {
    if (gridPoints < 3) throw std::invalid_argument("minimize_on_circle: need at least 3 grid points");
    const double step = kTwoPi / gridPoints;
    int bestK = 0;
    double bestV = std::numeric_limits<double>::infinity();
    for (int k = 0; k < gridPoints; ++k) {
        const double v = f(step * k);
        if (v < bestV) {
            bestV = v;
            bestK = k;
        }
    }
    const double lo = step * (bestK - 1);
    const double hi = step * (bestK + 1);
    const double angle = golden_section_min(f, lo, hi, tolerance);
    const double refined = f(angle);
    if (refined < bestV) return {std::fmod(angle + kTwoPi, kTwoPi), refined};
    return {step * bestK, bestV};
}

// ---------------------------------------------------------------------------
// Fridman containment

ContainmentVerdict verify_fridman_certificate(const DomainDescriptor& domain, std::span<const Complex> z,
                                              const MapWitness& witness, const RadiusValue& r, std::size_t samples,
                                              std::uint64_t seed) {
    if (!contains(domain, z)) throw DomainError("verify_fridman_certificate: centre lies outside the domain");
    const double tanhR = r.tanhValue();

    if (domain.kind() == DomainKind::PuncturedDisk) {
        if (witness.family != MapFamily::SlitDiskRiemann) {
            throw WitnessMismatchError("punctured disk certificates need a SlitDiskRiemann witness");
        }
        if (std::abs(z[0] - Complex{witness.slitPoint, 0.0}) > kWitnessNormalizationTol) {
            throw WitnessMismatchError("SlitDiskRiemann(a) witness is centred at a, not at the queried point");
        }
        // The ball lies in the punctured disk, so containment in the slit disk is slit avoidance.
        const double clearance = slit_clearance(witness.slitPoint).tanhClearance;
        return {tanhR <= clearance ? Containment::CertifiedTrue : Containment::CertifiedFalse, 0,
                "tanh r <= slit clearance " + format_number(clearance)};
    }

    if (domain.kind() == DomainKind::UnitDisk && witness.family == MapFamily::MobiusDisk) {
        const Complex image0 = witness(Complex{0.0, 0.0});
        const Complex centre = witness.hasInverse() ? witness.inverse(Point{Complex{0.0, 0.0}})[0] : image0;
        // Either direction of the automorphism is onto the disk; only the normalization matters.
        if (std::abs(image0 - z[0]) > kWitnessNormalizationTol && std::abs(centre - z[0]) > kWitnessNormalizationTol) {
            throw WitnessMismatchError("disk automorphism does not send 0 to the queried point");
        }
        return {Containment::CertifiedTrue, 0, "witness is onto the disk"};
    }

    if (!domain.isBalancedConvex() || !is_origin(z)) {
        throw WitnessMismatchError("verify_fridman_certificate: supported cases are the punctured disk with a slit "
                                   "witness, the disk with an automorphism, and balanced convex domains at 0");
    }

    // Kobayashi ball at 0 is tanh(r) D.
    if (witness.family == MapFamily::LinearScaling || witness.family == MapFamily::Inclusion) {
        const auto radii = euclidean_radii(domain);
        const double t = witness.factor;
        if (t > radii.inner * (1.0 + kUlpSlack)) {
            throw WitnessMismatchError("scaling witness does not map the unit ball into the domain");
        }
        // tanh(r) D ⊂ t B  iff  tanh(r) * circumradius <= t.
        if (tanhR <= (t / radii.outer) * (1.0 + kUlpSlack)) {
            return {Containment::CertifiedTrue, 0, "tanh r * outer radius <= t"};
        }
        if (tanhR > (t / radii.outerAttained) * (1.0 + kUlpSlack)) {
            return {Containment::CertifiedFalse, 0, "a boundary point of tanh(r) D lies outside t B"};
        }
        // Between the certified radii: fall through to sampling.
    }

    if (!witness.hasInverse()) {
        throw WitnessMismatchError("sampling containment needs a witness with an inverse");
    }
    PointSampler sampler(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        const Point p = (i % 2 == 0) ? sampler.onGaugeSphere(domain, tanhR) : sampler.inGaugeBall(domain, tanhR);
        const Point pre = witness.inverse(p);
        const Point back = witness(pre);
        Point diff(p.size());
        for (std::size_t k = 0; k < p.size(); ++k) diff[k] = back[k] - p[k];
        if (!(euclidean_norm(pre) < 1.0) || euclidean_norm(diff) > 1e-9) {
            return {Containment::CertifiedFalse, i + 1, "sampled point of the Kobayashi ball outside the image"};
        }
    }
    return {Containment::SampledTrue, samples, "sampled boundary and interior points of the Kobayashi ball"};
}

// ---------------------------------------------------------------------------
// Squeezing lower bounds

double squeezing_lower_from_map(const DomainDescriptor& domain, std::span<const Complex> z, const MapWitness& witness) {
    if (!contains(domain, z)) throw DomainError("squeezing_lower_from_map: point lies outside the domain");
    const Point zp(z.begin(), z.end());
    if (euclidean_norm(witness(zp)) > kWitnessNormalizationTol) {
        throw WitnessMismatchError("squeezing_lower_from_map: witness does not send the point to 0");
    }

    switch (witness.family) {
    case MapFamily::MobiusDisk:
        switch (domain.kind()) {
        case DomainKind::UnitDisk:
            return 1.0;
        case DomainKind::PuncturedDisk:
            // Image is the disk minus the single point phi(0).
            return std::abs(witness(Complex{0.0, 0.0}));
        case DomainKind::Annulus: {
            // The image misses phi(closed inner disk); phi has its only zero outside that disk,
            // so by the minimum-modulus principle the distance to 0 is attained on the circle.
            const double rIn = std::get<Annulus>(domain.variant()).innerRadius;
            const auto best = minimize_on_circle([&](double t) { return std::abs(witness(std::polar(rIn, t))); });
            return best.value;
        }
        default:
            break;
        }
        break;
    case MapFamily::LinearScaling:
    case MapFamily::Inclusion: {
        if (!domain.isBalancedConvex() || !is_origin(z)) break;
        const auto radii = euclidean_radii(domain);
        const double t = witness.factor;
        if (t * radii.outer > 1.0 + kUlpSlack) {
            throw WitnessMismatchError("scaling witness does not map the domain into the unit ball");
        }
        // t D ⊃ t * inner * B.
        return std::min(t * radii.inner, 1.0);
    }
    default:
        break;
    }
    throw UnsupportedDomainError("squeezing_lower_from_map: no bound for " + std::string(to_string(witness.family)) +
                                 " on " + domain.describe());
}

// ---------------------------------------------------------------------------
// Schwarz property

SchwarzCheckResult schwarz_property_check(const MapWitness& witness, const DomainDescriptor& source,
                                          const DomainDescriptor& target, double r, std::size_t samples,
                                          std::uint64_t seed) {
    if (!source.isBalancedConvex() || !target.isBalancedConvex()) {
        throw UnsupportedDomainError("schwarz_property_check: both domains must be balanced and convex");
    }
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("schwarz_property_check: r must lie in (0, 1]");
    const Point origin(source.dim(), Complex{0.0, 0.0});
    const Point image0 = witness(origin);
    if (image0.size() != target.dim()) throw DimensionMismatchError("schwarz_property_check: witness lands in wrong dimension");
    if (euclidean_norm(image0) > kWitnessNormalizationTol) {
        throw WitnessMismatchError("schwarz_property_check: witness must fix the origin");
    }

    PointSampler sampler(seed);
    SchwarzCheckResult result;
    for (std::size_t i = 0; i < samples; ++i) {
        // Every fourth sample sits just inside the gauge sphere, where violations show first.
        const Point p = (i % 4 == 0) ? sampler.onGaugeSphere(source, r * (1.0 - 1e-12)) : sampler.inGaugeBall(source, r);
        const double excess = gauge_eval(target, witness(p)) - r;
        result.worstExcess = std::max(result.worstExcess, excess);
        ++result.samples;
        if (excess >= 1e-10 && result.passed) {
            result.passed = false;
            result.counterexample = p;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Centre equality chain

MainTheoremReport theorem_main1_witness(const DomainDescriptor& domain, double epsilon, std::size_t samples,
                                        std::uint64_t seed) {
    if (!domain.isBalancedConvex()) {
        throw UnsupportedDomainError("theorem_main1_witness: " + domain.describe() +
                                     " is not bounded, balanced and convex");
    }
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw DomainError("theorem_main1_witness: epsilon must lie in (0, 1/2)");

    const std::size_t n = domain.dim();
    const Point origin(n, Complex{0.0, 0.0});
    const auto radii = euclidean_radii(domain);

    MainTheoremReport report;
    report.domain = domain.describe();
    report.epsilon = epsilon;
    report.knownConstant = homogeneous_constant(domain);
    report.fridman = fridman_value(domain, origin);
    report.squeezing = squeezing_value(domain, origin);

    auto step = [&](std::string label, double lhs, std::string rel, double rhs) {
        bool holds = false;
        if (rel == "<") holds = lhs < rhs;
        else if (rel == "<=") holds = lhs <= rhs;
        else holds = lhs == rhs;
        report.steps.push_back({std::move(label), lhs, std::move(rel), rhs, holds});
    };

    // Fridman witness f(w) = inner * w maps B into D; its best radius is tanh r = inner / outer.
    const MapWitness f = radii.inner == 1.0 ? inclusion(n) : linear_scaling(radii.inner, n);
    const double bestTanh = radii.inner / radii.outer;
    const double eRef = report.knownConstant.value_or(bestTanh);
    const double tanhR = (1.0 - epsilon / 2.0) * bestTanh;
    report.tanhRadius = tanhR;

    const auto verdict = verify_fridman_certificate(domain, origin, f, RadiusValue::fromTanh(tanhR));
    step("B^k(0,r) inside f(B) (certified)", tanhR, "<=", verdict.certified() && verdict.holds() ? bestTanh : -1.0);
    step("(1-eps) e_D(0) < tanh r", (1.0 - epsilon) * eRef, "<", tanhR);

    // L(z) = tanh(r) z maps D onto {l_D < tanh r} = B^k(0, r).
    {
        PointSampler sampler(seed);
        double worstForward = 0.0;
        bool preimagesInside = true;
        for (std::size_t i = 0; i < samples; ++i) {
            const Point zIn = sampler.inGaugeBall(domain, 1.0);
            worstForward = std::max(worstForward, gauge_eval(domain, scaled(zIn, tanhR)));
            const Point y = sampler.inGaugeBall(domain, tanhR);
            preimagesInside = preimagesInside && contains(domain, scaled(y, 1.0 / tanhR));
        }
        step("L(D) inside {l_D < tanh r}: max sampled l_D(L z)", worstForward, "<", tanhR);
        step("L^{-1}({l_D < tanh r}) inside D (sampled preimages)", preimagesInside ? 1.0 : 0.0, "==", 1.0);
    }

    // F = f^{-1}; F(B^k(0,r)) = (tanh r / inner) D contains the ball of radius t.
    const double scale = tanhR / radii.inner;
    const double t = squeezing_lower_from_map(domain, origin, linear_scaling(scale, n));
    report.squeezeRadius = t;
    const double sRef = report.knownConstant.value_or(report.squeezing.upper.value_or(1.0));
    step("t <= s_D(0)", t, "<=", sRef);

    // p on the ray where the inscribed ball touches the boundary, just outside F(B^k(0,r)).
    const Point& u = radii.innerDirection;
    const double lu = gauge_eval(domain, u);
    const double c = tanhR * (1.0 + epsilon / 4.0) / (radii.inner * lu);
    const Point p = scaled(u, c);
    const Point fp = f(p);
    const double lfp = gauge_eval(domain, fp);
    const double normP = euclidean_norm(p);
    step("p in unit ball", normP, "<", 1.0);
    step("tanh r <= l_D(f(p)) (p outside F(B^k(0,r)))", tanhR, "<=", lfp);
    step("l_D(f(p)) <= |p| (Schwarz)", lfp, "<=", normP * (1.0 + kUlpSlack));
    step("|p| < (1+eps) t", normP, "<", (1.0 + epsilon) * t);
    step("(1-eps) e_D(0) < (1+eps) s_D(0)", (1.0 - epsilon) * eRef, "<", (1.0 + epsilon) * t);

    const double tolerance = 2.0 * epsilon * eRef;
    step("|e_witness - s_witness| <= 2 eps rho", std::abs(tanhR - t), "<=", tolerance);
    if (report.knownConstant) {
        step("|e_witness - rho| <= 2 eps rho", std::abs(tanhR - *report.knownConstant), "<=", tolerance);
        step("|s_witness - rho| <= 2 eps rho", std::abs(t - *report.knownConstant), "<=", tolerance);
    }

    report.verified = std::all_of(report.steps.begin(), report.steps.end(), [](const ChainStep& s) { return s.holds; });
    return report;
}

} // namespace holoinv
