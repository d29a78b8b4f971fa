#pragma once

#include <pclab/wl/colored_graph.hpp>

#include <json.hpp>

#include <array>
#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace pclab
{
    // Connected 3-regular graph; the vertex order is the id order.
    class CfiBase
    {
        public:
            CfiBase(std::string name, std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

            static auto library(const std::string & name) -> CfiBase;
            static auto library_names() -> std::vector<std::string>;
            static auto read_text(std::istream & in, const std::string & name = "custom") -> CfiBase;

            auto name() const -> const std::string & { return _name; }
            auto num_vertices() const -> std::uint32_t { return _n; }
            auto num_edges() const -> std::size_t { return _edges.size(); }
            // Undirected edges with u < v, sorted.
            auto edges() const -> const std::vector<std::pair<std::uint32_t, std::uint32_t>> & { return _edges; }

            // Directed edges (u, v), lexicographically sorted; there are 2 * num_edges() of them.
            auto directed() const -> const std::vector<std::pair<std::uint32_t, std::uint32_t>> & { return _directed; }
            auto inverse(std::size_t e) const -> std::size_t { return _inverse[e]; }
            // The three directed edges leaving v, ordered by head.
            auto out_edges(std::uint32_t v) const -> const std::array<std::size_t, 3> & { return _out[v]; }

        private:
            std::string _name;
            std::uint32_t _n;
            std::vector<std::pair<std::uint32_t, std::uint32_t>> _edges;
            std::vector<std::pair<std::uint32_t, std::uint32_t>> _directed;
            std::vector<std::size_t> _inverse;
            std::vector<std::array<std::size_t, 3>> _out;
    };

    struct CfiTuple
    {
        std::uint32_t vertex;
        std::array<std::uint32_t, 3> elements;
    };

    // CFI[base; p; lambda]. Universe element (e, x) has id e * p + x.
    class CfiStructure
    {
        public:
            CfiStructure(CfiBase base, std::uint32_t p, std::vector<std::uint32_t> lambda);

            auto base() const -> const CfiBase & { return _base; }
            auto p() const -> std::uint32_t { return _p; }
            auto lambda() const -> const std::vector<std::uint32_t> & { return _lambda; }
            auto lambda_sum() const -> std::uint32_t;
            auto universe_size() const -> std::uint32_t { return static_cast<std::uint32_t>(_base.directed().size()) * _p; }
            auto element(std::size_t e, std::uint32_t x) const -> std::uint32_t { return static_cast<std::uint32_t>(e) * _p + x; }
            // Index of the edge class of an element; the preorder compares these.
            auto edge_class(std::uint32_t a) const -> std::size_t { return a / _p; }

            auto cycle() const -> const std::vector<std::pair<std::uint32_t, std::uint32_t>> & { return _cycle; }
            auto inverse_pairs() const -> const std::vector<std::pair<std::uint32_t, std::uint32_t>> & { return _inverse_rel; }
            auto tuples() const -> const std::vector<CfiTuple> & { return _tuples; }

        private:
            CfiBase _base;
            std::uint32_t _p;
            std::vector<std::uint32_t> _lambda;
            std::vector<std::pair<std::uint32_t, std::uint32_t>> _cycle;
            std::vector<std::pair<std::uint32_t, std::uint32_t>> _inverse_rel;
            std::vector<CfiTuple> _tuples;
    };

    auto build_cfi(const CfiBase & base, std::uint32_t p, const std::vector<std::uint32_t> & lambda) -> CfiStructure;

    struct AutSpace
    {
        std::uint32_t p;
        // Vectors over F_p indexed by directed edges.
        std::vector<std::vector<std::uint32_t>> basis;

        auto dimension() const -> std::size_t { return basis.size(); }
    };

    auto automorphism_space(const CfiBase & base, std::uint32_t p) -> AutSpace;
    auto satisfies_inv(const CfiBase & base, std::uint32_t p, const std::vector<std::uint32_t> & pi) -> bool;
    auto satisfies_cfi(const CfiBase & base, std::uint32_t p, const std::vector<std::uint32_t> & pi) -> bool;

    auto apply_shift(const CfiStructure & s, const std::vector<std::uint32_t> & pi) -> CfiStructure;
    // The element map (e, x) -> (e, x + pi(e)) underlying apply_shift.
    auto shift_map(const CfiStructure & s, const std::vector<std::uint32_t> & pi) -> std::vector<std::uint32_t>;
    // Is `map` an isomorphism from a onto b (all four relations)?
    auto is_cfi_isomorphism(const CfiStructure & a, const CfiStructure & b, const std::vector<std::uint32_t> & map) -> bool;

    auto cfi_isomorphic(const CfiStructure & a, const CfiStructure & b) -> bool;
    auto twisted_pair(const CfiBase & base, std::uint32_t p) -> std::pair<CfiStructure, CfiStructure>;

    // Edge elements keep their edge-class colour; one inner node per R tuple is joined to its
    // three entries (relation "R"); C and I are kept as relations "C" and "I".
    auto to_graph(const CfiStructure & s) -> ColoredGraph;

    auto coordinate_orbits(const CfiStructure & s, const AutSpace & aut) -> std::vector<std::vector<std::uint32_t>>;

    // Relational-structure JSON (as read by the logic module) plus a "cfi" metadata object.
    auto to_json(const CfiStructure & s) -> nlohmann::json;
}
