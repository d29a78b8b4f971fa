#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace pclab
{
    using Tuple = std::vector<std::uint32_t>;

    struct RelationTable
    {
        std::size_t arity = 0;
        std::set<Tuple> tuples;

        auto contains(const Tuple & t) const -> bool { return tuples.contains(t); }
    };

    // Finite relational structure with universe {0, ..., n - 1}.
    struct RelStructure
    {
        std::uint32_t n = 0;
        std::map<std::string, RelationTable> relations;

        // Declares the relation if needed; the arity must match an earlier declaration.
        auto add_relation(const std::string & name, std::size_t arity) -> RelationTable &;
        auto add_tuple(const std::string & name, Tuple t) -> void;
        auto validate() const -> void;
        auto relation(const std::string & name) const -> const RelationTable &;
        auto has_relation(const std::string & name) const -> bool { return relations.contains(name); }
    };

    auto to_json(const RelStructure & s) -> nlohmann::json;
    auto rel_structure_from_json(const nlohmann::json & j) -> RelStructure;
    auto read_rel_structure(const std::string & path) -> RelStructure;

    // Graphs as structures: a symmetric binary relation E.
    auto graph_structure(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>> & edges) -> RelStructure;
    auto cycle_structure(std::uint32_t n) -> RelStructure;
    auto clique_structure(std::uint32_t n) -> RelStructure;
}
