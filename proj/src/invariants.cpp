#include "holoinv/invariants.hpp"

#include "holoinv/certificates.hpp"
#include "holoinv/errors.hpp"
#include "holoinv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace holoinv {

namespace {

void require_inside(const DomainDescriptor& domain, std::span<const Complex> z, const char* op) {
    if (!contains(domain, z)) {
        throw DomainError(std::string(op) + ": point lies outside " + domain.describe());
    }
}

Certificate homogeneous_certificate(const DomainDescriptor& domain, double value) {
    switch (domain.kind()) {
    case DomainKind::UnitDisk:
    case DomainKind::UnitBall:
        return Certificate(CertificateKind::ClosedForm)
            .with("formula", "identity map is extremal on the unit ball")
            .with("value", value);
    case DomainKind::Polydisk:
        return Certificate(CertificateKind::ClosedForm)
            .with("formula", "rho(polydisk:n) = n^(-1/2)")
            .with("n", std::to_string(domain.dim()))
            .with("value", value);
    default:
        return Certificate(CertificateKind::ProductFormula)
            .with("formula", "rho = (sum rho_i^-2)^(-1/2) over homogeneous balanced convex factors")
            .with("value", value);
    }
}

Certificate transitivity_certificate() {
    return Certificate(CertificateKind::TheoremCitation)
        .with("statement", "automorphism group of D is transitive; the value at 0 holds at every point");
}

Certificate centre_equality_certificate() {
    return Certificate(CertificateKind::TheoremCitation)
        .with("statement", "m_D(0) = 1 on bounded balanced convex domains, so e_D(0) = s_D(0)");
}

double round_down(double v) { return v > 0.0 ? std::nextafter(v, 0.0) : v; }
double round_up(double v) { return std::nextafter(v, 2.0); }

/// Lower bound s_D(0) >= inner/outer on a balanced convex domain from the scaling witness.
BoundInterval scaling_squeeze_at_origin(const DomainDescriptor& domain) {
    const auto radii = euclidean_radii(domain);
    const auto witness = linear_scaling(1.0 / radii.outer, domain.dim());
    const Point origin(domain.dim(), Complex{0.0, 0.0});
    const double lower = squeezing_lower_from_map(domain, origin, witness);
    auto cert = witness.certificate();
    cert.with("inner_radius", radii.inner).with("outer_radius", radii.outer);
    cert.with("radii", radii.exact ? "closed form" : "Lipschitz-padded sphere grid");
    return BoundInterval::range(lower, 1.0, std::move(cert));
}

} // namespace

std::optional<double> homogeneous_constant(const DomainDescriptor& domain) {
    switch (domain.kind()) {
    case DomainKind::UnitDisk:
    case DomainKind::UnitBall:
        return 1.0;
    case DomainKind::Polydisk:
        return 1.0 / std::sqrt(static_cast<double>(domain.dim()));
    case DomainKind::Product: {
        std::vector<double> rhos;
        for (const auto& f : std::get<Product>(domain.variant()).factors) {
            const auto c = homogeneous_constant(f);
            if (!c) return std::nullopt;
            rhos.push_back(*c);
        }
        return product_constant(rhos);
    }
    default:
        return std::nullopt;
    }
}

BoundInterval squeezing_value(const DomainDescriptor& domain, std::span<const Complex> z) {
    require_inside(domain, z, "squeezing_value");

    if (const auto c = homogeneous_constant(domain)) {
        auto b = BoundInterval::exactValue(*c, homogeneous_certificate(domain, *c));
        if (!is_origin(z)) b.certificates.push_back(transitivity_certificate());
        return b;
    }

    switch (domain.kind()) {
    case DomainKind::PuncturedDisk: {
        const double s = std::abs(z[0]);
        return BoundInterval::exactValue(
            s, Certificate(CertificateKind::ClosedForm)
                   .with("formula", "s(z) = |z| on the punctured disk")
                   .with("value", s));
    }
    case DomainKind::Annulus: {
        const auto witness = mobius_disk(z[0]);
        const double lower = squeezing_lower_from_map(domain, z, witness);
        auto cert = witness.certificate();
        cert.with("bound", "min over the inner circle of |phi|");
        return BoundInterval::range(lower, 1.0, std::move(cert));
    }
    default:
        break;
    }

    if (domain.isBalancedConvex() && is_origin(z)) return scaling_squeeze_at_origin(domain);

    return BoundInterval::unknown("squeezing_value: no certificate family for " + domain.describe() +
                                  " at this point");
}

BoundInterval fridman_value(const DomainDescriptor& domain, std::span<const Complex> z) {
    require_inside(domain, z, "fridman_value");

    if (const auto c = homogeneous_constant(domain)) {
        auto b = BoundInterval::exactValue(*c, homogeneous_certificate(domain, *c));
        b.certificates.push_back(centre_equality_certificate());
        if (!is_origin(z)) b.certificates.push_back(transitivity_certificate());
        return b;
    }

    switch (domain.kind()) {
    case DomainKind::PuncturedDisk:
    case DomainKind::Annulus: {
        // Rotate to the real point a = |z|; both domains are circular.
        const double a = std::abs(z[0]);
        const auto clearance = slit_clearance(a);
        Certificate cert(domain.kind() == DomainKind::PuncturedDisk ? CertificateKind::ContainmentCheck
                                                                     : CertificateKind::Monotonicity);
        cert.with("witness", "SlitDiskRiemann")
            .with("a", a)
            .with("rotation", std::arg(z[0]))
            .with("A", clearance.A)
            .with("x_star", clearance.xStar)
            .with("min_h", clearance.minH)
            .with("criterion", "B^k(a, r) avoids the slit (-1,0) iff tanh r <= sqrt(min h)");
        if (domain.kind() == DomainKind::Annulus) {
            cert.with("argument",
                      "A_r inside the punctured disk gives k_{A_r} >= k_{punctured disk}; the annulus ball sits "
                      "in the punctured-disk ball, which avoids the slit; A_r minus the slit is simply connected");
        }
        cert.with("note", "exact value of e unknown; upper bound is the trivial 1");
        return BoundInterval::range(clearance.tanhClearance, 1.0, std::move(cert));
    }
    default:
        break;
    }

    if (domain.isBalancedConvex() && is_origin(z)) {
        auto b = scaling_squeeze_at_origin(domain);
        b.certificates.push_back(centre_equality_certificate());
        return b;
    }

    return BoundInterval::unknown("fridman_value: no certificate family for " + domain.describe() +
                                  " at this point");
}

BoundInterval quotient_from(const BoundInterval& s, const BoundInterval& e, bool balancedConvexAtOrigin) {
    if (balancedConvexAtOrigin) return BoundInterval::exactValue(1.0, centre_equality_certificate());

    if (!s.hasInformation() && !e.hasInformation()) {
        return BoundInterval::unknown("quotient_bounds: neither s nor e is available");
    }

    if (s.exact && e.exact) {
        const double m = std::min(*s.lower / *e.lower, 1.0);
        return BoundInterval::exactValue(
            m, Certificate(CertificateKind::ClosedForm).with("formula", "m = s / e with both exact").with("value", m));
    }

    BoundInterval m;
    Certificate cert(CertificateKind::TheoremCitation);
    cert.with("formula", "m in [s.lower / e.upper, s.upper / e.lower], outward rounded");
    cert.with("statement", "s_D <= e_D, hence m_D <= 1");
    if (s.lower) {
        const double eUpper = e.upper.value_or(1.0);
        m.lower = std::clamp(round_down(*s.lower / eUpper), 0.0, 1.0);
    }
    if (e.lower && *e.lower > 0.0 && s.upper) {
        m.upper = std::clamp(round_up(*s.upper / *e.lower), 0.0, 1.0);
    } else {
        m.upper = 1.0;
        m.warnings.push_back("no lower bound for e; upper bound is m <= 1");
    }
    m.certificates.push_back(std::move(cert));
    return m;
}

BoundInterval quotient_bounds(const DomainDescriptor& domain, std::span<const Complex> z) {
    require_inside(domain, z, "quotient_bounds");
    const auto s = squeezing_value(domain, z);
    const auto e = fridman_value(domain, z);
    return quotient_from(s, e, domain.isBalancedConvex() && is_origin(z));
}

double product_constant(std::span<const double> rhos) {
    if (rhos.empty()) throw std::invalid_argument("product_constant: empty factor list");
    for (double r : rhos) {
        if (!(r > 0.0 && r <= 1.0)) throw DomainError("product_constant: factor constant outside (0, 1]");
    }
    // Factor out the smallest constant: equal inputs give rho / sqrt(m) with no rounding in the sum.
    const double rMin = *std::min_element(rhos.begin(), rhos.end());
    double sum = 0.0;
    for (double r : rhos) {
        const double q = rMin / r;
        sum += q * q;
    }
    return rMin / std::sqrt(sum);
}

PolydiskConstants polydisk_constants(std::size_t n) {
    if (n == 0) throw std::invalid_argument("polydisk_constants: n must be positive");
    if (n == 1) return {1.0, 0.0, true};
    const double root = std::sqrt(static_cast<double>(n));
    return {1.0 / root, 2.0 / std::log((root + 1.0) / (root - 1.0)), false};
}

BoundInterval kubota_rho(const DomainDescriptor& domain, std::span<const Point> samples) {
    if (const auto c = homogeneous_constant(domain)) {
        auto b = BoundInterval::exactValue(*c, homogeneous_certificate(domain, *c));
        b.certificates.push_back(Certificate(CertificateKind::TheoremCitation)
                                     .with("statement", "rho(D) = sup_z s_D(z), constant on homogeneous D"));
        return b;
    }
    std::optional<double> best;
    std::size_t used = 0;
    for (const auto& p : samples) {
        if (!contains(domain, p)) continue;
        const auto s = squeezing_value(domain, p);
        if (s.lower) {
            best = std::max(best.value_or(0.0), *s.lower);
            ++used;
        }
    }
    if (!best) return BoundInterval::unknown("kubota_rho: no sampled point produced a squeezing bound");
    return BoundInterval::range(best, 1.0,
                                Certificate(CertificateKind::MapWitness)
                                    .with("statement", "rho(D) >= s_D(z) for every sampled z")
                                    .with("samples", std::to_string(used)));
}

std::vector<NamedConstant> parse_constants(std::istream& in) {
    std::vector<NamedConstant> out;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string name;
        std::string rhoText;
        if (!(fields >> name)) continue;
        std::string extra;
        if (!(fields >> rhoText) || (fields >> extra)) {
            throw ParseError("constants line " + std::to_string(lineNo) + ": expected `name rho`");
        }
        double rho = 0.0;
        try {
            std::size_t used = 0;
            rho = std::stod(rhoText, &used);
            if (used != rhoText.size()) throw std::invalid_argument(rhoText);
        } catch (const std::exception&) {
            throw ParseError("constants line " + std::to_string(lineNo) + ": bad number `" + rhoText + "`");
        }
        if (!(rho > 0.0 && rho <= 1.0)) {
            throw ParseError("constants line " + std::to_string(lineNo) + ": rho must lie in (0, 1]");
        }
        out.push_back({name, rho});
    }
    return out;
}

std::vector<NamedConstant> load_constants_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open constants file " + path);
    return parse_constants(in);
}

} // namespace holoinv
