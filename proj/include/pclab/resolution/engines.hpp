#pragma once

#include <pclab/resolution/cnf.hpp>

#include <chrono>
#include <optional>
#include <vector>

namespace pclab
{
    struct HornResult
    {
        bool refuted = false;
        // The least fixed point of unit propagation, sorted.
        std::vector<std::uint32_t> derived_units;
    };

    auto horn_refute(const CnfFormula & f) -> HornResult;

    struct KresOptions
    {
        // Let input clauses wider than k act as premises (never added to the derived set).
        bool premise_wide = false;
        // Discard clauses that contain a derived clause, and drop derived clauses that contain a
        // new one. The refutation verdict is unchanged (every clause of the full closure contains
        // a kept clause); `derived` then holds the reduced basis.
        bool subsumption = false;
        // Return as soon as the empty clause appears; `derived` is then just the empty clause.
        bool stop_on_refutation = false;
        std::size_t clause_limit = 20'000'000;
        std::optional<std::chrono::steady_clock::time_point> deadline;
    };

    struct KresResult
    {
        bool refuted = false;
        // Sorted by width, then literals.
        std::vector<Clause> derived;
    };

    auto kres_saturate(const CnfFormula & f, int k, const KresOptions & options = {}) -> KresResult;

    // Satisfiability of a CNF with clauses of width <= 2, via strongly connected components of
    // the implication graph.
    auto two_sat_oracle(const CnfFormula & f) -> bool;
}
