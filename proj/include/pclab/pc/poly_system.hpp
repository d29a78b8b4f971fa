#pragma once

#include <pclab/pc/polynomial.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pclab
{
    struct PolySystem
    {
        Field field;
        std::uint32_t num_vars = 0;
        std::vector<Polynomial> axioms;
        bool booleanity = true;

        // Optional human-readable variable names, names[v - 1] for variable v.
        std::vector<std::string> names;

        auto validate() const -> void;
        auto max_degree() const -> int;
        auto add(Polynomial p) -> void;
    };

    auto to_json(const PolySystem & s) -> nlohmann::json;
    auto poly_system_from_json(const nlohmann::json & j) -> PolySystem;
    auto read_poly_system(const std::string & path) -> PolySystem;

    // The same axioms read over another field: rationals reduce mod p (denominators must be
    // invertible), residues lift to their least non-negative integer.
    auto convert_field(const PolySystem & s, const Field & to) -> PolySystem;

    // Brute force over all 0/1 points; returns a common zero if one exists. Needs num_vars <= 26.
    auto boolean_common_zero(const PolySystem & s) -> std::optional<std::vector<std::uint8_t>>;
    auto satisfies(const PolySystem & s, const std::vector<std::uint8_t> & assignment) -> bool;
}
