#ifndef CJS_JOB_HPP
#define CJS_JOB_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "cjs/driver.hpp"

namespace cjs {

// "QQ", "GF(p)", "GF(p)(t)" or "GF(p)[a]/(modulus)".
Field parse_field(const std::string& s);

// A chart description read from a JSON document:
//   field, vars, gens, frame {u, y}, boundary [{generator, status, birth}],
//   optional stratum [{component [vars], label, original}] replacing the
//   computed labels, center [vars], chart (variable), point [{var, value | condition}],
//   options {max_steps, max_charts, labels, prepare_budget, sigma_budget}.
struct PointSpec {
    std::string var;
    std::string value;     // a field element, or
    std::string condition; // a univariate polynomial in var
};

// Locates the point in `chart`; conditions are parsed over the chart's variables.
ChartState apply_point(const ChartState& chart, const std::vector<PointSpec>& point);

struct Job {
    std::vector<Polynomial> gens;
    Frame frame;
    std::optional<std::set<std::string>> center;
    std::optional<std::string> chart_var;
    std::vector<PointSpec> point;
    std::optional<std::vector<StratumComponent>> stratum;
    DriverOptions options;

    // gens and frame only
    ChartState base() const;
    // base() with the point located.
    ChartState chart() const;
    // chart() with stratum labels, computed or supplied.
    ChartState labelled_chart() const;
    // Labels `c` as a root, or with the supplied stratum.
    ChartState label(ChartState c) const;
};

// Throws input_error naming the offending field.
Job parse_job(const nlohmann::json& j);
Job parse_job_text(const std::string& text);

} // namespace cjs

#endif
