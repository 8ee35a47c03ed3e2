#include "holoinv/errors.hpp"
#include "holoinv/metrics.hpp"
#include "holoinv/stability.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace holoinv;

TEST_CASE("geometric exhaustion") {
    const auto seq = ExhaustionSequence::geometric(0.2, 0.1);
    CHECK(seq.radii().front() == 0.1);
    CHECK(seq.reachesFloor());
    for (std::size_t k = 1; k < seq.radii().size(); ++k) CHECK(seq.radii()[k] == seq.radii()[k - 1] / 2.0);
    CHECK(seq.radii()[seq.radii().size() - 2] >= kDefaultExhaustionFloor);
    CHECK(seq.nestedOnSamples(1000, 41));
    CHECK(seq.limitDomain().kind() == DomainKind::PuncturedDisk);
}

TEST_CASE("exhaustion preconditions") {
    CHECK_THROWS_AS(ExhaustionSequence::make(0.2, {0.1, 0.2}), DomainError);
    CHECK_THROWS_AS(ExhaustionSequence::make(0.05, {0.1, 0.01}), DomainError);
    CHECK_THROWS_AS(ExhaustionSequence::make(0.2, {}), std::invalid_argument);
}

TEST_CASE("s lower trajectory") {
    const auto seq = ExhaustionSequence::make(0.2, {0.1, 0.01, 0.001, 1e-4});
    const auto s = s_lower_trajectory(seq);
    REQUIRE(s.size() == 4);
    for (std::size_t k = 0; k < s.size(); ++k) {
        CHECK(s[k].bound == doctest::Approx(oracle::mobius_min_closed(0.2, seq.radii()[k])).epsilon(1e-10));
        CHECK(s[k].bound <= 0.2);
        if (k > 0) CHECK(s[k].bound > s[k - 1].bound);
    }
    CHECK(s[0].bound == doctest::Approx(0.1 / 0.98).epsilon(1e-10));
    CHECK(std::abs(s.back().bound - 0.2) < 1e-3);

    const auto fine = s_lower_trajectory(ExhaustionSequence::geometric(0.2, 0.1, 1e-4));
    for (std::size_t k = 1; k < fine.size(); ++k) CHECK(fine[k].bound >= fine[k - 1].bound);
    CHECK(fine.back().r <= 1e-4);
    CHECK(convergence_assert(fine, 0.2, 1e-3));
}

TEST_CASE("s lower trajectory at a non-real base point") {
    const auto rotated = s_lower_trajectory(ExhaustionSequence::geometric(Complex(0.0, 0.2), 0.1, 1e-4));
    const auto real = s_lower_trajectory(ExhaustionSequence::geometric(0.2, 0.1, 1e-4));
    CHECK(rotated == real);
}

TEST_CASE("e lower trajectory is the slit clearance") {
    const double a = std::exp(-std::numbers::pi);
    for (const auto& p : e_lower_trajectory(ExhaustionSequence::geometric(a, a / 2.0))) {
        CHECK(std::abs(p.bound - (std::sqrt(2.0) - 1.0)) < 1e-12);
        CHECK(p.kind == CertificateKind::Monotonicity);
    }
    for (const auto& p : e_lower_trajectory(ExhaustionSequence::geometric(std::exp(-1.0), 0.1))) {
        CHECK(p.bound == doctest::Approx(0.731129).epsilon(1e-6));
    }
    const auto e = e_lower_trajectory(ExhaustionSequence::geometric(0.2, 0.1));
    const double A = std::log(5.0);
    const double closed = std::sqrt(oracle::h_profile(A, std::sqrt(A * A + oracle::pi * oracle::pi)));
    for (const auto& p : e) CHECK(std::abs(p.bound - closed) < 1e-14);
    CHECK(convergence_assert(e, e.front().bound, 1e-12));
}

TEST_CASE("convergence assert") {
    const auto truncated = s_lower_trajectory(ExhaustionSequence::make(0.2, {0.1}));
    CHECK_FALSE(convergence_assert(truncated, 0.2, 1e-3));
    const std::vector<double> wobbly{0.1, 0.15, 0.19, 0.18, 0.1999};
    CHECK_FALSE(convergence_assert(std::span<const double>(wobbly), 0.2, 1e-3));
    const std::vector<double> empty;
    CHECK_FALSE(convergence_assert(std::span<const double>(empty), 0.2, 1e-3));
}

TEST_CASE("annulus quotient report") {
    const auto plain = annulus_quotient_report(0.2, 0.01);
    CHECK(plain.verdict == AnnulusVerdict::Inconclusive);
    CHECK(*plain.squeezing.lower == doctest::Approx(0.190381).epsilon(1e-6));
    CHECK(*plain.fridman.lower == doctest::Approx(slit_clearance(0.2).tanhClearance).epsilon(1e-14));
    CHECK(plain.sEvidenceConverges);

    const auto supplied = annulus_quotient_report(0.2, 0.01, 0.25);
    CHECK(*supplied.quotient.upper == doctest::Approx(0.25 / slit_clearance(0.2).tanhClearance).epsilon(1e-12));
    bool provenance = false;
    for (const auto& c : supplied.squeezing.certificates) {
        provenance = provenance || c.find("provenance") == std::optional<std::string>("externally supplied");
    }
    CHECK(provenance);

    const auto certified = annulus_quotient_report(std::exp(-std::numbers::pi), 1e-5, 0.05);
    CHECK(certified.verdict == AnnulusVerdict::CertifiedConditional);
    CHECK(*certified.quotient.upper == doctest::Approx(0.12071).epsilon(1e-4));
    CHECK(*certified.quotient.upper < 1.0);

    CHECK_THROWS_AS(annulus_quotient_report(0.2, 0.01, 0.1), DomainError);
    CHECK(annulus_quotient_report(Complex(0.0, 0.2), 0.01).rotation == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("trajectory csv") {
    std::ostringstream out;
    write_trajectory_csv(out, s_lower_trajectory(ExhaustionSequence::make(0.2, {0.1, 0.01})));
    CHECK(out.str() == "k,r,bound,certificateKind\n1,0.1,0.102040816327,MapWitness\n2,0.01,0.190380761523,MapWitness\n");
}
