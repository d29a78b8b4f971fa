#include <pclab/harness/report.hpp>
#include <pclab/errors.hpp>

#include <cstdio>
#include <fstream>

using nlohmann::json;
using std::string;
using std::vector;

namespace pclab
{
    namespace
    {
        template <typename T>
        auto opt(const std::optional<T> & v) -> json
        {
            return v ? json(*v) : json(nullptr);
        }

        auto render(const json & v) -> string
        {
            if (v.is_null())
                return {};
            if (v.is_string())
                return v.get<string>();
            if (v.is_boolean())
                return v.get<bool>() ? "true" : "false";
            if (v.is_number_float()) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.3f", v.get<double>());
                return buf;
            }
            if (v.is_array()) {
                string out;
                for (auto & x : v) {
                    if (! out.empty())
                        out += ';';
                    out += render(x);
                }
                return out;
            }
            return v.dump();
        }

        // "k:dim" per finished saturation.
        auto saturation_list(const DegreeSearch & s, bool live) -> json
        {
            json out = json::array();
            for (auto & [k, dim, monomials] : s.saturations)
                out.push_back(std::to_string(k) + ":" + std::to_string(live ? monomials : dim));
            return out;
        }
    }

    auto csv_escape(const string & field) -> string
    {
        if (field.find_first_of(",\"\n\r") == string::npos)
            return field;
        string out = "\"";
        for (char c : field) {
            if (c == '"')
                out += '"';
            out += c;
        }
        return out + "\"";
    }

    auto Report::write_csv(std::ostream & out) const -> void
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "," : "") << csv_escape(columns[i]);
        out << '\n';
        for (auto & row : rows) {
            for (std::size_t i = 0; i < columns.size(); ++i)
                out << (i ? "," : "") << csv_escape(render(row.at(columns[i])));
            out << '\n';
        }
    }

    auto Report::to_json() const -> json
    {
        return json(rows);
    }

    auto Report::save(const string & prefix) const -> void
    {
        std::ofstream csv{ prefix + ".csv" };
        if (! csv)
            throw UsageError("cannot write '" + prefix + ".csv'");
        write_csv(csv);
        std::ofstream js{ prefix + ".json" };
        if (! js)
            throw UsageError("cannot write '" + prefix + ".json'");
        js << to_json().dump(2) << '\n';
    }

    auto degree_growth_report(const vector<DegreeGrowthRow> & rows) -> Report
    {
        Report r;
        r.columns = { "base", "base_vertices", "p", "field", "graph_vertices", "iso_vars", "iso_axioms",
            "min_degree", "pc_status", "pc_completed", "pc_seconds", "basis_dims", "live_monomials",
            "wl_value", "wl_status", "wl_completed", "wl_seconds", "control_refuted", "command" };
        for (auto & row : rows)
            r.rows.push_back({
                { "base", row.base },
                { "base_vertices", row.base_vertices },
                { "p", row.p },
                { "field", row.field },
                { "graph_vertices", row.graph_vertices },
                { "iso_vars", row.iso_vars },
                { "iso_axioms", row.iso_axioms },
                { "min_degree", opt(row.pc.degree) },
                { "pc_status", cell_status_name(row.pc.status) },
                { "pc_completed", row.pc.completed },
                { "pc_seconds", row.pc.seconds },
                { "basis_dims", saturation_list(row.pc, false) },
                { "live_monomials", saturation_list(row.pc, true) },
                { "wl_value", opt(row.wl.dim) },
                { "wl_status", cell_status_name(row.wl.status) },
                { "wl_completed", row.wl.completed },
                { "wl_seconds", row.wl.seconds },
                { "control_refuted", opt(row.control_refuted) },
                { "command", row.command },
            });
        return r;
    }

    auto calibration_report(const CalibrationReport & rep) -> Report
    {
        Report r;
        r.columns = { "pair", "vertices", "min_degree", "pc_status", "pc_completed", "pc_seconds",
            "wl_value", "wl_status", "wl_completed", "wl_seconds", "offset", "uniform", "command" };
        for (auto & row : rep.rows)
            r.rows.push_back({
                { "pair", row.name },
                { "vertices", row.vertices },
                { "min_degree", opt(row.pc.degree) },
                { "pc_status", cell_status_name(row.pc.status) },
                { "pc_completed", row.pc.completed },
                { "pc_seconds", row.pc.seconds },
                { "wl_value", opt(row.wl.dim) },
                { "wl_status", cell_status_name(row.wl.status) },
                { "wl_completed", row.wl.completed },
                { "wl_seconds", row.wl.seconds },
                { "offset", opt(rep.offset) },
                { "uniform", rep.uniform },
                { "command", rep.command },
            });
        return r;
    }

    auto csp_sweep_report(const vector<CspRow> & rows) -> Report
    {
        Report r;
        r.columns = { "instance", "template", "k", "direct", "cnf_refuted", "homomorphism", "cnf_vars",
            "cnf_clauses", "width", "seconds", "command" };
        for (auto & row : rows)
            r.rows.push_back({
                { "instance", row.instance },
                { "template", row.template_name },
                { "k", row.k },
                { "direct", row.direct },
                { "cnf_refuted", row.cnf_refuted },
                { "homomorphism", row.homomorphism },
                { "cnf_vars", row.cnf_vars },
                { "cnf_clauses", row.cnf_clauses },
                { "width", row.width },
                { "seconds", row.seconds },
                { "command", row.command },
            });
        return r;
    }
}
