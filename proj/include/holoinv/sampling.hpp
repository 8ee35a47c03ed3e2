#pragma once

#include "holoinv/domains.hpp"

#include <cstdint>
#include <random>

namespace holoinv {

inline constexpr std::uint64_t kDefaultSeed = 20190615;

/// Deterministic point source. Every sampling check takes an explicit seed so
/// results are reproducible and the seed can be recorded in certificates.
class PointSampler {
public:
    explicit PointSampler(std::uint64_t seed = kDefaultSeed) : rng_(seed), seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    double uniform(double lo, double hi);
    Complex gaussianComplex();
    /// Uniform direction on the unit sphere of C^n.
    Point direction(std::size_t n);
    /// Uniform in the disk |w| < radius.
    Complex inDisk(double radius = 1.0);
    /// Uniform in the Euclidean ball of radius `radius` in C^n.
    Point inBall(std::size_t n, double radius = 1.0);
    /// Point with gauge value uniform in [0, level) along a random direction.
    Point inGaugeBall(const DomainDescriptor& domain, double level);
    /// Point with gauge value exactly `level`.
    Point onGaugeSphere(const DomainDescriptor& domain, double level);

private:
    std::mt19937_64 rng_;
    std::uint64_t seed_;
};

double euclidean_norm(std::span<const Complex> z);
Point scaled(std::span<const Complex> z, Complex factor);

} // namespace holoinv
