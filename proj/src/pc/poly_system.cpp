#include <pclab/pc/poly_system.hpp>
#include <pclab/errors.hpp>

#include <algorithm>
#include <fstream>

using nlohmann::json;
using std::string;
using std::vector;

namespace pclab
{
    auto PolySystem::validate() const -> void
    {
        for (size_t i = 0; i < axioms.size(); ++i) {
            if (axioms[i].field() != field)
                throw UsageError("axiom " + std::to_string(i) + " is over " + axioms[i].field().to_string()
                        + " but the system is over " + field.to_string());
            if (axioms[i].max_var() > num_vars)
                throw UsageError("axiom " + std::to_string(i) + " uses variable " + std::to_string(axioms[i].max_var())
                        + " beyond num_vars = " + std::to_string(num_vars));
        }
        if (! names.empty() && names.size() != num_vars)
            throw UsageError("variable name list does not match num_vars");
    }

    auto PolySystem::max_degree() const -> int
    {
        int d = -1;
        for (auto & p : axioms)
            d = std::max(d, p.degree());
        return d;
    }

    auto PolySystem::add(Polynomial p) -> void
    {
        axioms.push_back(std::move(p));
    }

    auto convert_field(const PolySystem & s, const Field & to) -> PolySystem
    {
        PolySystem out;
        out.field = to;
        out.num_vars = s.num_vars;
        out.booleanity = s.booleanity;
        out.names = s.names;
        for (auto & p : s.axioms) {
            Polynomial q{ to };
            for (auto & [m, c] : p.terms())
                q.add_term(m, s.field.is_rational() ? Scalar{ to, c.rational() } : Scalar{ to, static_cast<long long>(c.residue()) });
            out.axioms.push_back(std::move(q));
        }
        return out;
    }

    auto to_json(const PolySystem & s) -> json
    {
        json field_json = s.field.is_rational()
            ? json{ { "kind", "Q" } }
            : json{ { "kind", "Fp" }, { "p", s.field.characteristic() } };

        json polys = json::array();
        for (auto & p : s.axioms) {
            json terms = json::array();
            for (auto & [m, c] : p.terms())
                terms.push_back(json{ { "coef", c.to_string() }, { "mono", m.vars() } });
            polys.push_back(std::move(terms));
        }

        json result{ { "field", field_json }, { "num_vars", s.num_vars }, { "booleanity", s.booleanity }, { "polys", polys } };
        if (! s.names.empty())
            result["names"] = s.names;
        return result;
    }

    auto poly_system_from_json(const json & j) -> PolySystem
    {
        try {
            PolySystem s;
            auto & fj = j.at("field");
            string kind = fj.at("kind").get<string>();
            if (kind == "Q")
                s.field = Field::rationals();
            else if (kind == "Fp")
                s.field = Field::prime(fj.at("p").get<std::uint32_t>());
            else
                throw UsageError("unknown field kind '" + kind + "'");

            s.num_vars = j.at("num_vars").get<std::uint32_t>();
            s.booleanity = j.value("booleanity", true);
            if (j.contains("names"))
                s.names = j.at("names").get<vector<string>>();

            for (auto & pj : j.at("polys")) {
                Polynomial p{ s.field };
                for (auto & tj : pj) {
                    auto & cj = tj.at("coef");
                    Rational c = cj.is_string() ? Rational::parse(cj.get<string>()) : Rational{ cj.get<long long>() };
                    vector<Var> vars = tj.at("mono").get<vector<Var>>();
                    std::sort(vars.begin(), vars.end());
                    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
                        if (! s.booleanity)
                            throw UsageError("repeated variable in monomial of a non-Boolean system");
                        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
                    }
                    p.add_term(Monomial{ std::move(vars) }, Scalar{ s.field, c });
                }
                s.axioms.push_back(std::move(p));
            }
            s.validate();
            return s;
        }
        catch (const json::exception & e) {
            throw UsageError(string{ "malformed polynomial system JSON: " } + e.what());
        }
    }

    auto read_poly_system(const string & path) -> PolySystem
    {
        std::ifstream in{ path };
        if (! in)
            throw UsageError("cannot open '" + path + "'");
        json j;
        try {
            in >> j;
        }
        catch (const json::exception & e) {
            throw UsageError("'" + path + "' is not valid JSON: " + e.what());
        }
        return poly_system_from_json(j);
    }

    auto satisfies(const PolySystem & s, const vector<std::uint8_t> & assignment) -> bool
    {
        for (auto & p : s.axioms)
            if (! p.evaluate(assignment).is_zero())
                return false;
        return true;
    }

    auto boolean_common_zero(const PolySystem & s) -> std::optional<vector<std::uint8_t>>
    {
        if (s.num_vars > 26)
            throw UsageError("brute force limited to 26 variables");
        vector<std::uint8_t> a(s.num_vars + 1, 0);
        for (std::uint64_t bits = 0; bits < (std::uint64_t{ 1 } << s.num_vars); ++bits) {
            for (std::uint32_t v = 1; v <= s.num_vars; ++v)
                a[v] = (bits >> (v - 1)) & 1;
            if (satisfies(s, a))
                return a;
        }
        return std::nullopt;
    }
}
