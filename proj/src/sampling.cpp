#include "holoinv/sampling.hpp"

#include <cmath>
#include <numbers>

namespace holoinv {

double euclidean_norm(std::span<const Complex> z) {
    double s = 0.0;
    for (const auto& c : z) s += std::norm(c);
    return std::sqrt(s);
}

Point scaled(std::span<const Complex> z, Complex factor) {
    Point out(z.begin(), z.end());
    for (auto& c : out) c *= factor;
    return out;
}

double PointSampler::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng_);
}

Complex PointSampler::gaussianComplex() {
    std::normal_distribution<double> dist(0.0, 1.0);
    const double re = dist(rng_);
    const double im = dist(rng_);
    return {re, im};
}

Point PointSampler::direction(std::size_t n) {
    Point p(n);
    double norm = 0.0;
    do {
        for (auto& c : p) c = gaussianComplex();
        norm = euclidean_norm(p);
    } while (norm < 1e-300);
    for (auto& c : p) c /= norm;
    return p;
}

Complex PointSampler::inDisk(double radius) {
    const double rho = radius * std::sqrt(uniform(0.0, 1.0));
    const double theta = uniform(-std::numbers::pi, std::numbers::pi);
    return std::polar(rho, theta);
}

Point PointSampler::inBall(std::size_t n, double radius) {
    Point u = direction(n);
    const double rho = radius * std::pow(uniform(0.0, 1.0), 1.0 / (2.0 * static_cast<double>(n)));
    for (auto& c : u) c *= rho;
    return u;
}

Point PointSampler::inGaugeBall(const DomainDescriptor& domain, double level) {
    Point u = direction(domain.dim());
    const double g = gauge_eval(domain, u);
    const double t = level * uniform(0.0, 1.0);
    for (auto& c : u) c *= t / g;
    return u;
}

Point PointSampler::onGaugeSphere(const DomainDescriptor& domain, double level) {
    Point u = direction(domain.dim());
    const double g = gauge_eval(domain, u);
    for (auto& c : u) c *= level / g;
    return u;
}

} // namespace holoinv
