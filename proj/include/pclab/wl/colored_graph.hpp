#pragma once

#include <json.hpp>

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pclab
{
    struct Relation
    {
        std::string name;
        // Directed pairs; undirected graphs store both directions.
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    };

    // Vertex-colored graph with any number of named binary relations.
    class ColoredGraph
    {
        public:
            ColoredGraph() = default;
            explicit ColoredGraph(std::uint32_t n);

            auto size() const -> std::uint32_t { return _n; }
            auto colors() const -> const std::vector<int> & { return _colors; }
            auto color(std::uint32_t v) const -> int { return _colors[v]; }
            auto relations() const -> const std::vector<Relation> & { return _relations; }

            auto set_color(std::uint32_t v, int c) -> void;
            auto add_edge(const std::string & relation, std::uint32_t u, std::uint32_t v) -> void;
            auto add_undirected(const std::string & relation, std::uint32_t u, std::uint32_t v) -> void;

            // Index of the relation with this name, created empty if missing.
            auto relation_index(const std::string & name) -> std::size_t;
            auto find_relation(const std::string & name) const -> std::optional<std::size_t>;

            // Adjacency test; builds a lookup structure on first use.
            auto has_edge(std::size_t relation, std::uint32_t u, std::uint32_t v) const -> bool;

            // Colour classes keyed by colour value, each sorted.
            auto color_classes() const -> std::vector<std::pair<int, std::vector<std::uint32_t>>>;

            auto relabeled(const std::vector<std::uint32_t> & perm) const -> ColoredGraph;

        private:
            std::uint32_t _n = 0;
            std::vector<int> _colors;
            std::vector<Relation> _relations;
            mutable std::vector<std::vector<std::uint64_t>> _bits;

            auto ensure_bits() const -> void;
    };

    // Text format: "n m", then m lines "u v" (undirected, relation "E"), then optionally a line
    // "colors c_0 ... c_{n-1}".
    auto read_graph_text(std::istream & in) -> ColoredGraph;
    auto read_graph_file(const std::string & path) -> ColoredGraph;
    auto write_graph_text(const ColoredGraph & g) -> std::string;

    auto to_json(const ColoredGraph & g) -> nlohmann::json;
    auto colored_graph_from_json(const nlohmann::json & j) -> ColoredGraph;

    // Exhaustive search for a colour- and relation-preserving bijection (relations matched by name).
    auto find_isomorphism(const ColoredGraph & g, const ColoredGraph & h) -> std::optional<std::vector<std::uint32_t>>;

    // Small graph constructors.
    auto cycle_graph(std::uint32_t n) -> ColoredGraph;
    auto complete_graph(std::uint32_t n) -> ColoredGraph;
    auto disjoint_union(const ColoredGraph & a, const ColoredGraph & b) -> ColoredGraph;
    auto empty_graph(std::uint32_t n) -> ColoredGraph;
}
