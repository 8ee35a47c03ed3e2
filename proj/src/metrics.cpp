#include "holoinv/metrics.hpp"

#include "holoinv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace holoinv {

namespace {

constexpr double kPi = std::numbers::pi;

void require_punctured_disk_args(double a, Complex z) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("punctured-disk base point a must lie in (0, 1)");
    const double m = std::abs(z);
    if (!(m > 0.0 && m < 1.0)) throw DomainError("point must satisfy 0 < |z| < 1");
}

} // namespace

double poincare_distance(Complex a, Complex b) {
    if (!(std::abs(a) < 1.0) || !(std::abs(b) < 1.0)) {
        throw DomainError("poincare_distance: arguments must lie in the open unit disk");
    }
    const double num = std::abs(a - b);
    if (num == 0.0) return 0.0;
    const double den = std::abs(1.0 - std::conj(a) * b);
    return std::atanh(std::min(num / den, 1.0));
}

double kobayashi_punctured_disk(double a, Complex z) {
    require_punctured_disk_args(a, z);
    const double theta = std::arg(z);
    const double logZ = std::log(std::abs(z));
    const double logA = std::log(a);
    const double diff = logZ - logA;
    const double sum = logZ + logA;
    const double num = theta * theta + diff * diff;
    if (num == 0.0) return 0.0;
    return std::sqrt(num / (theta * theta + sum * sum));
}

double kobayashi_punctured_disk_oracle(double a, Complex z, int liftRange) {
    require_punctured_disk_args(a, z);
    if (liftRange < 3) throw std::invalid_argument("liftRange must be at least 3");

    // Lifts live in the left half-plane {Re w < 0}, whose curvature -1 distance d satisfies
    // cosh d(w1, w2) = 1 + |w1 - w2|^2 / (2 |Re w1| |Re w2|). The Kobayashi distance is d / 2.
    const Complex wa{std::log(a), 0.0};
    const double reZ = std::log(std::abs(z));
    const double imZ = std::arg(z);
    double best = std::numeric_limits<double>::infinity();
    for (int k = -liftRange; k <= liftRange; ++k) {
        const Complex wz{reZ, imZ + 2.0 * kPi * k};
        const double x = std::norm(wa - wz) / (2.0 * std::abs(wa.real()) * std::abs(wz.real()));
        best = std::min(best, x);
    }
    // acosh(1 + x) without cancellation.
    const double d = std::log1p(best + std::sqrt(best * (2.0 + best)));
    return std::tanh(0.5 * d);
}

double kobayashi_balanced_origin(const DomainDescriptor& domain, std::span<const Complex> z) {
    if (!domain.isBalancedConvex()) {
        throw UnsupportedDomainError("kobayashi_balanced_origin: " + domain.describe() +
                                     " is not a bounded balanced convex domain");
    }
    if (!contains(domain, z)) throw DomainError("kobayashi_balanced_origin: point lies outside the domain");
    return gauge_eval(domain, z);
}

bool kobayashi_ball_membership(const DomainDescriptor& domain, std::span<const Complex> center,
                               const RadiusValue& r, std::span<const Complex> z) {
    if (domain.isBalancedConvex() && center.size() == domain.dim() && is_origin(center)) {
        if (!contains(domain, z)) return false;
        return kobayashi_balanced_origin(domain, z) < r.tanhValue();
    }
    if (domain.kind() == DomainKind::PuncturedDisk && center.size() == 1 && center[0].imag() == 0.0 &&
        center[0].real() > 0.0 && center[0].real() < 1.0) {
        if (z.size() != 1) throw DimensionMismatchError("kobayashi_ball_membership: expected a point in C");
        if (!contains(domain, z)) return false;
        return kobayashi_punctured_disk(center[0].real(), z[0]) < r.tanhValue();
    }
    throw UnsupportedDomainError(
        "kobayashi_ball_membership: supported pairs are (balanced convex domain, center 0) and "
        "(punctured disk, real center a in (0,1)); got " +
        domain.describe());
}

double slit_distance_profile(double A, double x) {
    const double pi2 = kPi * kPi;
    return ((x - A) * (x - A) + pi2) / ((x + A) * (x + A) + pi2);
}

SlitClearanceResult slit_clearance(double a) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("slit_clearance: a must lie in (0, 1)");
    const double pi2 = kPi * kPi;
    SlitClearanceResult out{};
    out.A = -std::log(a);
    out.xStar = std::hypot(out.A, kPi);
    // xStar - A = π² / (xStar + A), avoiding cancellation for large A.
    const double gap = pi2 / (out.xStar + out.A);
    const double sum = out.xStar + out.A;
    out.minH = (gap * gap + pi2) / (sum * sum + pi2);
    out.tanhClearance = std::sqrt(out.minH);
    out.simpleLowerBound = pi2 / (4.0 * out.A * out.xStar + pi2);
    return out;
}

} // namespace holoinv
