#pragma once

#include "holoinv/bounds.hpp"
#include "holoinv/certificates.hpp"
#include "holoinv/domains.hpp"
#include "holoinv/stability.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace holoinv {

void to_json(nlohmann::json& j, const Certificate& c);
void from_json(const nlohmann::json& j, Certificate& c);
void to_json(nlohmann::json& j, const BoundInterval& b);
void from_json(const nlohmann::json& j, BoundInterval& b);
void to_json(nlohmann::json& j, const TrajectoryPoint& p);
void from_json(const nlohmann::json& j, TrajectoryPoint& p);
void to_json(nlohmann::json& j, const AnnulusQuotientReport& r);
void from_json(const nlohmann::json& j, AnnulusQuotientReport& r);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

namespace cli {

struct EvalReport {
    std::string domain;
    Point point;
    BoundInterval squeezing;
    BoundInterval fridman;
    BoundInterval quotient;
    bool operator==(const EvalReport&) const = default;
};

void to_json(nlohmann::json& j, const EvalReport& r);
void from_json(const nlohmann::json& j, EvalReport& r);

struct SweepRow {
    double A;
    double a;
    double sExact;
    double eLower;
    double mUpper;
    bool operator==(const SweepRow&) const = default;
};

void to_json(nlohmann::json& j, const SweepRow& r);
void from_json(const nlohmann::json& j, SweepRow& r);

/// Key/value block per certificate, indented by `indent` spaces.
std::string certificate_text(const Certificate& c, int indent = 2);
std::string interval_text(const BoundInterval& b);
void write_eval_text(std::ostream& out, const EvalReport& r, bool explain);
void write_eval_csv(std::ostream& out, const EvalReport& r);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct Series {
    std::string title;
    std::string xLabel;
    std::string yLabel;
    std::vector<double> x;
    std::vector<double> y;
    bool logY = false;
};

/// Minimal static line plot.
void write_svg(std::ostream& out, const Series& series);

} // namespace cli
} // namespace holoinv
