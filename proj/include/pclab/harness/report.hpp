#pragma once

#include <pclab/harness/experiments.hpp>

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace pclab
{
    // A flat table: every row is a JSON object with exactly the listed columns. The CSV rendering
    // writes null as an empty field and arrays joined by ';'.
    struct Report
    {
        std::vector<std::string> columns;
        std::vector<nlohmann::json> rows;

        auto write_csv(std::ostream & out) const -> void;
        auto to_json() const -> nlohmann::json;
        // Writes <prefix>.csv and <prefix>.json.
        auto save(const std::string & prefix) const -> void;
    };

    auto degree_growth_report(const std::vector<DegreeGrowthRow> & rows) -> Report;
    auto calibration_report(const CalibrationReport & r) -> Report;
    auto csp_sweep_report(const std::vector<CspRow> & rows) -> Report;

    auto csv_escape(const std::string & field) -> std::string;
}
