#include "holoinv/commands.hpp"
#include "holoinv/domain_spec.hpp"
#include "holoinv/errors.hpp"
#include "holoinv/invariants.hpp"
#include "holoinv/report_io.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace holoinv;
using namespace holoinv::cli;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) result.push_back(line);
    return result;
}

template <class T>
void check_round_trip(const T& value) {
    const json emitted = value;
    const T parsed = json::parse(emitted.dump()).get<T>();
    CHECK(parsed == value);
}

} // namespace

TEST_CASE("domain spec grammar") {
    CHECK(parse_domain_spec("disk").kind() == DomainKind::UnitDisk);
    CHECK(parse_domain_spec("ball:3").dim() == 3);
    CHECK(parse_domain_spec("polydisk:2").kind() == DomainKind::Polydisk);
    CHECK(parse_domain_spec("punctured-disk").kind() == DomainKind::PuncturedDisk);
    CHECK(parse_domain_spec("annulus:0.25").kind() == DomainKind::Annulus);
    CHECK(parse_domain_spec("ellipsoid:1,2,3").dim() == 3);
    const auto prod = parse_domain_spec("product(ball:2, ellipsoid:1,2,polydisk:3)");
    CHECK(prod.kind() == DomainKind::Product);
    CHECK(prod.dim() == 7);
    CHECK_THROWS_AS(parse_domain_spec("ball"), ParseError);
    CHECK_THROWS_AS(parse_domain_spec("ball:0"), ParseError);
    CHECK_THROWS_AS(parse_domain_spec("cube:2"), ParseError);
    CHECK_THROWS_AS(parse_domain_spec("product(disk"), ParseError);
    CHECK_THROWS_AS(parse_domain_spec("disk extra"), ParseError);
    CHECK_THROWS_AS(parse_domain_spec("annulus:2"), ParseError);
}

TEST_CASE("point syntax") {
    CHECK(parse_complex("0.5") == Complex(0.5, 0.0));
    CHECK(parse_complex("0.1+0.2i") == Complex(0.1, 0.2));
    CHECK(parse_complex("-0.1-0.2i") == Complex(-0.1, -0.2));
    CHECK(parse_complex("0.2i") == Complex(0.0, 0.2));
    CHECK(parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(parse_complex("1e-3+2e-2i") == Complex(1e-3, 2e-2));
    CHECK(parse_point("0,0.3+0.1i").size() == 2);
    CHECK_THROWS_AS(parse_complex("abc"), ParseError);
    CHECK_THROWS_AS(parse_point("0,,1"), ParseError);
}

TEST_CASE("eval examples") {
    const auto pd = invoke({"eval", "--domain", "punctured-disk", "--point", "0.0432139", "--format", "json"});
    REQUIRE(pd.code == 0);
    const auto report = json::parse(pd.out).get<EvalReport>();
    CHECK(report.squeezing.exact);
    CHECK(*report.squeezing.lower == doctest::Approx(0.043214).epsilon(1e-5));
    CHECK(*report.fridman.lower == doctest::Approx(0.414214).epsilon(1e-5));
    const double A = -std::log(0.0432139);
    const double clearance = std::sqrt(oracle::h_profile(A, std::sqrt(A * A + oracle::pi * oracle::pi)));
    CHECK(*report.quotient.upper == doctest::Approx(0.0432139 / clearance).epsilon(1e-12));
    CHECK(*report.quotient.upper == doctest::Approx(0.104330).epsilon(1e-5));

    const auto poly = invoke({"eval", "--domain", "polydisk:2", "--point", "0,0", "--format", "json"});
    REQUIRE(poly.code == 0);
    const auto pr = json::parse(poly.out).get<EvalReport>();
    CHECK(*pr.squeezing.lower == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(*pr.fridman.lower == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(pr.quotient.exact);
    CHECK(*pr.quotient.lower == 1.0);

    const auto ball = invoke({"eval", "--domain", "ball:3", "--point", "0,0,0"});
    REQUIRE(ball.code == 0);
    CHECK(ball.out.find("s: exact 1\ne: exact 1\nm: exact 1\n") != std::string::npos);

    const auto explained = invoke({"eval", "--domain", "punctured-disk", "--point", "0.3", "--explain"});
    CHECK(explained.out.find("[certificate ContainmentCheck]") != std::string::npos);
    CHECK(explained.out.find("[certificate ClosedForm]") != std::string::npos);
}

TEST_CASE("eval exit codes") {
    CHECK(invoke({"eval", "--domain", "cube:2", "--point", "0"}).code == kExitUsage);
    CHECK(invoke({"eval", "--domain", "disk", "--point", "x"}).code == kExitUsage);
    CHECK(invoke({"eval", "--domain", "disk", "--point", "2"}).code == kExitUsage);
    CHECK(invoke({"eval", "--domain", "disk", "--point", "0,0"}).code == kExitUsage);
    CHECK(invoke({"eval", "--domain", "disk", "--point", "0", "--format", "svg"}).code == kExitUsage);
    CHECK(invoke({"eval", "--domain", "ellipsoid:1,2", "--point", "0.1,0.1"}).code == kExitUnsupported);
    CHECK(invoke({"eval", "--domain", "disk"}).code == kExitUsage);
    CHECK(invoke({"frobnicate"}).code == kExitUsage);
    CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("constants outside (0, 1] are rejected") {
    RunConfig config;
    config.command = Command::Table;
    config.constants = "constants-with-bad-rho.txt";
    {
        std::ofstream file(config.constants);
        file << "bad 0\n";
    }
    std::ostringstream out, err;
    const int code = run(config, out, err);
    std::remove(config.constants.c_str());
    CHECK(code == kExitUsage);
}

TEST_CASE("sweep") {
    const auto csv = invoke({"sweep"});
    REQUIRE(csv.code == 0);
    const auto rows = lines(csv.out);
    REQUIRE(rows.size() == 201);
    CHECK(rows.front() == "A,a,sExact,eLower,mUpper");
    bool sawTen = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double mUpper = std::stod(rows[i].substr(rows[i].rfind(',') + 1));
        CHECK(mUpper < 1.0);
        if (rows[i].rfind("10,", 0) == 0) {
            sawTen = true;
            CHECK(mUpper == doctest::Approx(2.96e-4).epsilon(1e-2));
        }
    }
    CHECK(sawTen);
    CHECK(invoke({"sweep", "--a-min", "5", "--a-max", "1"}).code == kExitUsage);
    CHECK(invoke({"sweep", "--step", "0"}).code == kExitUsage);
    CHECK(invoke({"sweep", "--a-min", "0"}).code == kExitUsage);
}

TEST_CASE("sweep output is stable across runs and thread counts") {
    const auto one = invoke({"sweep", "--jobs", "1"});
    const auto many = invoke({"sweep", "--jobs", "8"});
    const auto again = invoke({"sweep", "--jobs", "8", "--seed", "5"});
    CHECK(one.out == many.out);
    CHECK(many.out == again.out);
    const auto eval1 = invoke({"eval", "--domain", "ellipsoid:1,2", "--point", "0,0", "--format", "csv", "--seed", "9"});
    const auto eval2 = invoke({"eval", "--domain", "ellipsoid:1,2", "--point", "0,0", "--format", "csv", "--seed", "9"});
    CHECK(eval1.code == 0);
    CHECK(eval1.out == eval2.out);
}

TEST_CASE("sweep json and svg") {
    const auto js = invoke({"sweep", "--a-min", "1", "--a-max", "2", "--step", "0.5", "--format", "json"});
    REQUIRE(js.code == 0);
    const auto rows = json::parse(js.out).get<std::vector<SweepRow>>();
    REQUIRE(rows.size() == 3);
    CHECK(rows[2].A == 2.0);
    const auto svg = invoke({"sweep", "--format", "svg"});
    CHECK(svg.out.rfind("<svg", 0) == 0);
    CHECK(svg.out.find("</svg>") != std::string::npos);
    const auto plot = invoke({"plot", "--source", "sweep"});
    CHECK(plot.out == svg.out);
}

TEST_CASE("stability command") {
    const auto good = invoke({"stability", "--z0", "0.2", "--floor", "1e-4"});
    REQUIRE(good.code == 0);
    CHECK(good.out.rfind("k,r,bound,certificateKind\n", 0) == 0);
    CHECK(good.out.find("# s_lower_converges=true") != std::string::npos);
    CHECK(good.out.find("# e_lower_constant=true") != std::string::npos);

    const auto coarse = invoke({"stability", "--z0", "0.2", "--floor", "0.1"});
    REQUIRE(coarse.code == 0);
    CHECK(coarse.out.find("# s_lower_converges=false") != std::string::npos);

    const auto rotated = invoke({"stability", "--z0", "0.2i", "--floor", "1e-4"});
    CHECK(rotated.code == 0);
    CHECK(rotated.out == good.out);
    CHECK(rotated.err.find("rotated") != std::string::npos);

    CHECK(invoke({"stability", "--z0", "0.2", "--r1", "0.3"}).code == kExitUsage);
    CHECK(invoke({"stability", "--z0", "0"}).code == kExitUsage);
    CHECK(invoke({"stability", "--z0", "0.2", "--format", "text"}).code == kExitUsage);

    const auto js = invoke({"stability", "--z0", "0.2", "--floor", "1e-4", "--format", "json"});
    const auto parsed = json::parse(js.out);
    CHECK(parsed.at("sConverges").get<bool>());
    CHECK(parsed.at("sLower").get<Trajectory>().back().r < 1e-4);
}

TEST_CASE("annulus report via the command line") {
    const auto text = invoke({"stability", "--z0", "0.2", "--annulus", "0.01"});
    REQUIRE(text.code == 0);
    CHECK(text.out.find("verdict: inconclusive") != std::string::npos);
    const auto js = invoke({"stability", "--z0", "0.0432139182637", "--annulus", "1e-5", "--s-upper", "0.05", "--format", "json"});
    REQUIRE(js.code == 0);
    const auto report = json::parse(js.out).get<AnnulusQuotientReport>();
    CHECK(report.verdict == AnnulusVerdict::CertifiedConditional);
    CHECK(invoke({"stability", "--z0", "0.2", "--annulus", "0.01", "--s-upper", "0.1"}).code == kExitUsage);
    CHECK(invoke({"stability", "--z0", "0.2", "--s-upper", "0.3"}).code == kExitUsage);
}

TEST_CASE("table command") {
    const auto table = invoke({"table", "--max-n", "4"});
    REQUIRE(table.code == 0);
    const auto rows = lines(table.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[4] == "4,0.5,1.82047845325,0.5,0.5");

    const std::string path = "constants-for-table-test.txt";
    {
        std::ofstream file(path);
        file << "ball 1\nbidisk 0.7071067811865476\n";
    }
    const auto product = invoke({"table", "--constants", path});
    std::remove(path.c_str());
    REQUIRE(product.code == 0);
    CHECK(product.out.find("product,0.57735026919") != std::string::npos);
    CHECK(invoke({"table", "--constants", "/nonexistent/file"}).code == kExitUsage);
}

TEST_CASE("json round trips") {
    const auto d = DomainDescriptor::puncturedDisk();
    const Point z{Complex(0.1, -0.2)};
    EvalReport report{"punctured-disk", z, squeezing_value(d, z), fridman_value(d, z), quotient_bounds(d, z)};
    check_round_trip(report);
    const auto el = DomainDescriptor::ellipsoid({1.0, 2.0});
    const Point w{0.1, 0.1};
    check_round_trip(EvalReport{"ellipsoid:1,2", w, squeezing_value(el, w), fridman_value(el, w), quotient_bounds(el, w)});
    check_round_trip(annulus_quotient_report(Complex(0.1, 0.3), 0.01, 0.5));
    check_round_trip(annulus_quotient_report(0.2, 0.05));
    check_round_trip(SweepRow{1.0 / 3.0, std::exp(-1.0 / 3.0), 0.1, 0.2, 0.3});
    check_round_trip(Certificate(CertificateKind::Monotonicity).with("r", 1e-300).with("note", "a \"quoted\" value"));
}

TEST_CASE("seed from the environment") {
    RunConfig config;
    CHECK(parse_format("svg") == Format::Svg);
    CHECK_FALSE(parse_format("xml").has_value());
    ::setenv("HOLOINV_SEED", "not-a-number", 1);
    CHECK(invoke({"eval", "--domain", "disk", "--point", "0"}).code == kExitUsage);
    CHECK(invoke({"eval", "--domain", "disk", "--point", "0", "--seed", "3"}).code == kExitOk);
    ::setenv("HOLOINV_SEED", "17", 1);
    CHECK(invoke({"eval", "--domain", "disk", "--point", "0"}).code == kExitOk);
    ::unsetenv("HOLOINV_SEED");
}
