#pragma once

#include <pclab/wl/colored_graph.hpp>

#include <chrono>
#include <optional>

namespace pclab
{
    struct WlOptions
    {
        // Upper bound on |V|^dim per graph.
        std::size_t tuple_limit = 30'000'000;
        std::optional<std::chrono::steady_clock::time_point> deadline;
    };

    struct WlResult
    {
        bool distinguished = false;
        int rounds = 0;
        std::size_t colors = 0;
    };

    // dim-tuple refinement run jointly on g and h. dim = 1 is colour refinement.
    auto wl_run(const ColoredGraph & g, const ColoredGraph & h, int dim, const WlOptions & options = {}) -> WlResult;
    auto wl_distinguishes(const ColoredGraph & g, const ColoredGraph & h, int dim, const WlOptions & options = {}) -> bool;

    // Smallest dim <= dim_max that distinguishes g and h.
    auto wl_sweep(const ColoredGraph & g, const ColoredGraph & h, int dim_max, const WlOptions & options = {}) -> std::optional<int>;
}
