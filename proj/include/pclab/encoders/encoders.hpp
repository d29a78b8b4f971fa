#pragma once

#include <pclab/logic/structure.hpp>
#include <pclab/pc/poly_system.hpp>
#include <pclab/resolution/cnf.hpp>
#include <pclab/wl/colored_graph.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace pclab
{
    // Directed graphs are ColoredGraphs whose relation "E" holds the arcs.
    auto reachable(const ColoredGraph & g, std::uint32_t s, std::uint32_t t) -> bool;
    auto random_digraph(std::mt19937_64 & rng, std::uint32_t n, double arc_probability) -> ColoredGraph;
    auto random_graph(std::mt19937_64 & rng, std::uint32_t n, double edge_probability) -> ColoredGraph;

    // Variable X_v = v + 1; clauses X_v -> X_w per arc, 1 -> X_s, X_t -> 0.
    auto encode_nonreach(const ColoredGraph & g, std::uint32_t s, std::uint32_t t) -> CnfFormula;

    // Can v -> w extend to a partial isomorphism (colour and loops agree)?
    auto compatible_single(const ColoredGraph & g, const ColoredGraph & h, std::uint32_t v, std::uint32_t w) -> bool;
    // Is {v1 -> w1, v2 -> w2} a partial isomorphism? Relations are matched by name; a missing relation is empty.
    auto compatible_pair(const ColoredGraph & g, const ColoredGraph & h,
            std::uint32_t v1, std::uint32_t w1, std::uint32_t v2, std::uint32_t w2) -> bool;

    // Variable X_vw = v * |V(h)| + w + 1.
    auto encode_iso_cnf(const ColoredGraph & g, const ColoredGraph & h) -> CnfFormula;

    struct IsoPolyOptions
    {
        // Colour classes with different colour values: emit the system {1} instead of throwing.
        bool constant_on_mismatch = false;
    };

    // Variables X[v->w] for all pairs; row and column sums minus one, and X[v1->w1] * X[v2->w2] for
    // every pair that is not a partial isomorphism (single X[v->w] for incompatible singletons).
    auto encode_iso_poly(const ColoredGraph & g, const ColoredGraph & h, const Field & field = Field::rationals()) -> PolySystem;
    // Same axioms, but X[v->w] only exists when v and w have the same colour.
    auto encode_iso_poly_colored(const ColoredGraph & g, const ColoredGraph & h, const Field & field = Field::rationals(),
            const IsoPolyOptions & options = {}) -> PolySystem;

    struct PartialMap
    {
        // Sorted domain and the images, position by position.
        std::vector<std::uint32_t> domain, values;

        friend auto operator<=> (const PartialMap &, const PartialMap &) = default;
    };

    struct KConsistencyState
    {
        // All partial homomorphisms with |domain| <= k; entry 0 is the empty map.
        std::vector<PartialMap> maps;
        // Sub-maps required by the restriction condition.
        std::vector<std::vector<std::size_t>> restrictions;
        // One group per superset S: the maps q extending p with domain S.
        std::vector<std::vector<std::vector<std::size_t>>> extensions;
        // Membership in the limit of the shrinking iteration.
        std::vector<std::uint8_t> alive;
        std::size_t iterations = 0;

        auto consistent() const -> bool;
    };

    struct KConsistencyOptions
    {
        // Quantify over every superset S of dom(p) with |S| <= k, and every sub-map, instead of
        // one-element extensions and restrictions.
        bool full_subsets = false;
    };

    auto k_consistency_state(const RelStructure & a, const RelStructure & t, int k, const KConsistencyOptions & options = {}) -> KConsistencyState;
    auto k_consistency(const RelStructure & a, const RelStructure & t, int k, const KConsistencyOptions & options = {}) -> bool;
    // Variable X_p = index + 1 over the maps of k_consistency_state.
    auto encode_kconsistency_cnf(const RelStructure & a, const RelStructure & t, int k, const KConsistencyOptions & options = {}) -> CnfFormula;
    // Exhaustive search.
    auto homomorphism_exists(const RelStructure & a, const RelStructure & t) -> bool;
}
