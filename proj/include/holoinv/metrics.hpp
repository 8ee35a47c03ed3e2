#pragma once

#include "holoinv/domains.hpp"

namespace holoinv {

/// Poincaré distance on the unit disk, artanh(|a-b| / |1 - conj(a) b|).
double poincare_distance(Complex a, Complex b);

/// tanh of the Kobayashi distance on the punctured disk from a real a in (0,1) to z:
///   sqrt( (θ² + (log|z| - log a)²) / (θ² + (log|z| + log a)²) ),  θ = Arg z in (-π, π].
double kobayashi_punctured_disk(double a, Complex z);

inline constexpr int kDefaultLiftRange = 20;

/// Same quantity computed through the covering w -> e^w of the punctured disk by the
/// left half-plane: minimum half-plane distance over the deck translates
/// log z + 2πik, |k| <= liftRange.
double kobayashi_punctured_disk_oracle(double a, Complex z, int liftRange = kDefaultLiftRange);

/// tanh k_D(0, z) on a bounded balanced convex domain. This is the gauge l_D(z).
double kobayashi_balanced_origin(const DomainDescriptor& domain, std::span<const Complex> z);

/// Decides z in B^k(center, r). Supported: balanced convex domains centred at 0,
/// and the punctured disk centred at a real a in (0,1).
bool kobayashi_ball_membership(const DomainDescriptor& domain, std::span<const Complex> center,
                               const RadiusValue& r, std::span<const Complex> z);

/// h(x) = ((x - A)² + π²) / ((x + A)² + π²): squared tanh-distance from a = e^{-A}
/// to the slit point -e^{-x}.
double slit_distance_profile(double A, double x);

struct SlitClearanceResult {
    double A;                 // -log a
    double xStar;             // sqrt(A² + π²), minimiser of h
    double minH;              // h(xStar)
    double tanhClearance;     // sqrt(minH)
    double simpleLowerBound;  // π² / (4 A sqrt(A² + π²) + π²)
};

/// Distance (in tanh form) from a in (0,1) to the slit (-1, 0) inside the punctured disk.
SlitClearanceResult slit_clearance(double a);

} // namespace holoinv
