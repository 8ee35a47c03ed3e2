#include "holoinv/certificates.hpp"
#include "holoinv/errors.hpp"
#include "holoinv/invariants.hpp"
#include "holoinv/metrics.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace holoinv;
using std::numbers::pi;

TEST_CASE("slit disk map is normalised and lands in the slit disk") {
    for (double a : {std::exp(-pi), 0.2, 0.5, 0.9}) {
        const auto f = slit_disk_riemann_map(a);
        CHECK(std::abs(f(Complex(0.0)) - a) < 1e-12);
        PointSampler sampler(31);
        double closest = INFINITY;
        for (int i = 0; i < 10000; ++i) {
            const Complex w = f(sampler.inDisk(1.0));
            CHECK(oracle::in_slit_disk(w));
            for (double eps : {1e-1, 1e-3, 1e-6}) closest = std::min(closest, oracle::distance_to_slit(w, eps));
        }
        CHECK(closest > 0.0);
    }
}

TEST_CASE("slit disk map is injective on sampled pairs") {
    auto f = slit_disk_riemann_map(std::exp(-pi));
    const auto report = check_injectivity(f, 10000, 32);
    CHECK(report.pairs == 10000);
    CHECK(report.collisions == 0);
    CHECK(f.injectivityChecked);
}

TEST_CASE("slit disk map round trip") {
    const auto f = slit_disk_riemann_map(0.2);
    REQUIRE(f.hasInverse());
    PointSampler sampler(33);
    for (int i = 0; i < 1000; ++i) {
        const Complex z = sampler.inDisk(0.95);
        const Complex back = f.inverse(f(Point{z}))[0];
        CHECK(std::abs(back - z) < 1e-10);
    }
}

TEST_CASE("fridman certificates on the punctured disk") {
    const auto d = DomainDescriptor::puncturedDisk();
    const double a = std::exp(-pi);
    const auto f = slit_disk_riemann_map(a);
    CHECK(verify_fridman_certificate(d, Point{a}, f, RadiusValue::fromTanh(0.41)).holds());
    CHECK_FALSE(verify_fridman_certificate(d, Point{a}, f, RadiusValue::fromTanh(0.42)).holds());
    CHECK(verify_fridman_certificate(d, Point{a}, f, RadiusValue::fromTanh(0.41)).certified());
}

TEST_CASE("threshold flips at the slit clearance") {
    const auto d = DomainDescriptor::puncturedDisk();
    for (double A : {1.0, pi, 10.0}) {
        const double a = std::exp(-A);
        const auto f = slit_disk_riemann_map(a);
        const double t = slit_clearance(a).tanhClearance;
        CHECK(verify_fridman_certificate(d, Point{a}, f, RadiusValue::fromTanh(t - 1e-9)).holds());
        CHECK_FALSE(verify_fridman_certificate(d, Point{a}, f, RadiusValue::fromTanh(t + 1e-9)).holds());
    }
}

TEST_CASE("certified radii never exceed the reported lower bound") {
    PointSampler sampler(34);
    const auto d = DomainDescriptor::puncturedDisk();
    for (int i = 0; i < 300; ++i) {
        const double a = sampler.uniform(1e-4, 0.99);
        const auto f = slit_disk_riemann_map(a);
        const double t = sampler.uniform(0.0, 0.999);
        const auto verdict = verify_fridman_certificate(d, Point{a}, f, RadiusValue::fromTanh(t));
        if (verdict.certified() && verdict.holds()) CHECK(t <= *fridman_value(d, Point{a}).lower + 1e-12);
    }
    const auto pd = DomainDescriptor::polydisk(2);
    for (int i = 0; i < 100; ++i) {
        const double t = sampler.uniform(0.0, 0.999);
        const auto verdict = verify_fridman_certificate(pd, Point{0.0, 0.0}, inclusion(2), RadiusValue::fromTanh(t));
        if (verdict.certified() && verdict.holds()) CHECK(t <= *fridman_value(pd, Point{0.0, 0.0}).lower + 1e-12);
    }
}

TEST_CASE("inclusion of the ball into the bidisk") {
    const auto pd = DomainDescriptor::polydisk(2);
    const Point origin{0.0, 0.0};
    const double t = 1.0 / std::sqrt(2.0);
    CHECK(verify_fridman_certificate(pd, origin, inclusion(2), RadiusValue::fromTanh(t)).holds());
    const auto above = verify_fridman_certificate(pd, origin, inclusion(2), RadiusValue::fromTanh(t + 1e-6));
    CHECK_FALSE(above.holds());
    CHECK(above.certified());
}

TEST_CASE("disk automorphisms certify e = 1") {
    const auto d = DomainDescriptor::unitDisk();
    const auto verdict = verify_fridman_certificate(d, Point{0.3}, mobius_disk(0.3), RadiusValue::fromTanh(0.999));
    CHECK(verdict.holds());
    CHECK(verdict.certified());
}

TEST_CASE("squeezing lower bounds from maps") {
    const auto annulus = DomainDescriptor::annulus(0.01);
    const double s = squeezing_lower_from_map(annulus, Point{0.2}, mobius_disk(0.2));
    CHECK(s == doctest::Approx(0.19 / 0.998).epsilon(1e-10));
    CHECK(std::abs(s - oracle::mobius_min_on_circle(0.2, 0.01)) < 1e-9);

    CHECK(squeezing_lower_from_map(DomainDescriptor::unitDisk(), Point{0.0}, mobius_disk(0.0)) == 1.0);
    CHECK(squeezing_lower_from_map(DomainDescriptor::polydisk(2), Point{0.0, 0.0}, linear_scaling(1.0 / std::sqrt(2.0), 2)) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS(squeezing_lower_from_map(annulus, Point{0.2}, mobius_disk(0.3)));
}

TEST_CASE("annulus squeezing bound grows as the hole shrinks") {
    const Complex z0 = std::polar(0.35, 1.1);
    double previous = 0.0;
    for (double r : {0.1, 0.05, 0.01, 0.001}) {
        const double s = squeezing_lower_from_map(DomainDescriptor::annulus(r), Point{z0}, mobius_disk(z0));
        CHECK(s >= previous);
        CHECK(s == doctest::Approx(oracle::mobius_min_closed(0.35, r)).epsilon(1e-10));
        previous = s;
    }
}

TEST_CASE("circle minimisation") {
    const auto m = minimize_on_circle([](double t) { return 2.0 + std::cos(t - 1.0); });
    CHECK(m.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.angle == doctest::Approx(1.0 + pi).epsilon(1e-6));
}

namespace {

MapWitness swap2() {
    return custom_map("swap", 2, [](const Point& z) { return Point{z[1], z[0]}; });
}

MapWitness powers(int k) {
    return custom_map("power", 2, [k](const Point& z) { return Point{std::pow(z[0], k), std::pow(z[1], k + 1)}; });
}

} // namespace

TEST_CASE("schwarz property battery") {
    const auto pd = DomainDescriptor::polydisk(2);
    const auto ball = DomainDescriptor::unitBall(2);
    const auto el = DomainDescriptor::ellipsoid({1.0, 2.0});
    for (double r : {0.1, 0.3, 0.5, 0.9}) {
        CHECK(schwarz_property_check(inclusion(2), pd, pd, r, 10000).passed);
        CHECK(schwarz_property_check(swap2(), pd, pd, r, 10000).passed);
        CHECK(schwarz_property_check(swap2(), ball, ball, r, 10000).passed);
        CHECK(schwarz_property_check(powers(2), pd, pd, r, 10000).passed);
        CHECK(schwarz_property_check(powers(2), ball, ball, r, 10000).passed);
        CHECK(schwarz_property_check(linear_scaling(0.5, 2), pd, pd, r, 10000).passed);
        CHECK(schwarz_property_check(linear_scaling(1.0 / std::sqrt(2.0), 2), pd, ball, r, 10000).passed);
        CHECK(schwarz_property_check(inclusion(2), ball, pd, r, 10000).passed);
        CHECK(schwarz_property_check(inclusion(2), ball, el, r, 10000).passed);
    }
}

TEST_CASE("schwarz check rejects maps that are not holomorphic self maps") {
    const auto pd = DomainDescriptor::polydisk(2);
    // f(0) = 0 and f maps the bidisk into itself, but |z|^(1/2) is not holomorphic.
    const auto root = custom_map("modulus root", 2, [](const Point& z) {
        return Point{std::sqrt(std::abs(z[0])), std::sqrt(std::abs(z[1]))};
    });
    const auto result = schwarz_property_check(root, pd, pd, 0.3, 10000);
    CHECK_FALSE(result.passed);
    REQUIRE(result.counterexample.has_value());
    CHECK(result.worstExcess > 0.0);

    const auto grow = linear_scaling(1.2, 2);
    CHECK_FALSE(schwarz_property_check(grow, pd, pd, 0.9, 1000).passed);
}

TEST_CASE("theorem replay on balanced convex domains") {
    for (std::size_t n : {2u, 3u}) {
        const auto report = theorem_main1_witness(DomainDescriptor::polydisk(n), 1e-3);
        CHECK(report.verified);
        const double rho = 1.0 / std::sqrt(static_cast<double>(n));
        CHECK(std::abs(*report.fridman.lower - rho) <= 2e-3);
        CHECK(std::abs(*report.squeezing.lower - rho) <= 2e-3);
        for (const auto& step : report.steps) CHECK_MESSAGE(step.holds, step.label);
    }
    const auto ball = theorem_main1_witness(DomainDescriptor::unitBall(3), 1e-3);
    CHECK(ball.verified);
    CHECK(*ball.fridman.lower == 1.0);
    CHECK(*ball.squeezing.lower == 1.0);

    const auto el = theorem_main1_witness(DomainDescriptor::ellipsoid({1.0, 2.0, 0.75}), 1e-3);
    CHECK(el.verified);
}
