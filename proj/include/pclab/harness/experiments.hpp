#pragma once

#include <pclab/algebra/field.hpp>
#include <pclab/wl/colored_graph.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace pclab
{
    enum class CellStatus
    {
        done,
        timeout,
        limit
    };

    auto cell_status_name(CellStatus s) -> std::string;

    // Shared resource settings for every cell of an experiment.
    struct CellBudget
    {
        double seconds = 300;
        std::size_t monomial_limit = 25'000'000;
        std::size_t tuple_limit = 30'000'000;
        unsigned jobs = 1;
    };

    // Calls run(i) for i in [0, count) on `jobs` worker threads. Each call writes its own slot,
    // so the merged result does not depend on scheduling.
    auto run_cells(std::size_t count, unsigned jobs, const std::function<void (std::size_t)> & run) -> void;

    // Minimal MON-PC degree of an isomorphism system, searched upward from its axiom degree.
    struct DegreeSearch
    {
        std::optional<int> degree;
        CellStatus status = CellStatus::done;
        // Largest degree whose saturation finished without refuting (0 if none).
        int completed = 0;
        // (k, basis dimension, live monomials) for every finished saturation.
        std::vector<std::tuple<int, std::size_t, std::size_t>> saturations;
        double seconds = 0;
    };

    struct WlSearch
    {
        std::optional<int> dim;
        CellStatus status = CellStatus::done;
        int completed = 0;
        double seconds = 0;
    };

    auto search_refutation_degree(const ColoredGraph & g, const ColoredGraph & h, const Field & field, int k_max,
            const CellBudget & budget) -> DegreeSearch;
    auto search_wl_dimension(const ColoredGraph & g, const ColoredGraph & h, int dim_max, const CellBudget & budget) -> WlSearch;

    struct DegreeGrowthOptions
    {
        std::vector<std::string> bases{ "k4", "prism", "cube", "petersen" };
        std::uint32_t p = 2;
        Field field = Field::rationals();
        int k_max = 6;
        int wl_dim_max = 4;
        // Also saturate the untwisted structure against itself up to the degree reached.
        bool control = false;
        CellBudget budget;
        std::string command;
    };

    struct DegreeGrowthRow
    {
        std::string base;
        std::uint32_t base_vertices = 0;
        std::uint32_t p = 0;
        std::string field;
        std::uint32_t graph_vertices = 0;
        std::uint32_t iso_vars = 0;
        std::size_t iso_axioms = 0;
        DegreeSearch pc;
        WlSearch wl;
        // Control pair: refuted at some tested degree (should never happen).
        std::optional<bool> control_refuted;
        std::string command;
    };

    // Rows sorted by base size (vertex count, then name).
    auto experiment_degree_growth(const DegreeGrowthOptions & options) -> std::vector<DegreeGrowthRow>;

    struct CalibrationPair
    {
        std::string name;
        ColoredGraph g, h;
    };

    // Deterministic corpus of small pairs: cycle unions against long cycles, regular pairs,
    // coloured pairs, degree-sequence mismatches, isomorphic controls and the K4 CFI twisted pair.
    auto calibration_corpus(bool include_cfi = true) -> std::vector<CalibrationPair>;

    struct CalibrationOptions
    {
        int k_max = 4;
        int wl_dim_max = 4;
        Field field = Field::rationals();
        CellBudget budget;
        std::string command;
    };

    struct CalibrationRow
    {
        std::string name;
        std::uint32_t vertices = 0;
        DegreeSearch pc;
        WlSearch wl;
    };

    struct CalibrationReport
    {
        std::vector<CalibrationRow> rows;
        // The constant c with degree = wl + c on every pair where both are finite.
        std::optional<int> offset;
        // Every pair is consistent with `offset` (both absent counts as consistent).
        bool uniform = false;
        // Pairs with a timeout or limit cell, skipped by the uniformity check.
        std::size_t skipped = 0;
        std::string command;
    };

    auto experiment_wl_calibrate(const std::vector<CalibrationPair> & pairs, const CalibrationOptions & options) -> CalibrationReport;

    struct CspSweepOptions
    {
        std::uint32_t min_cycle = 3, max_cycle = 8;
        // Template K_m; 2 is 2-colouring.
        std::uint32_t template_size = 2;
        std::vector<int> ks{ 3 };
        bool full_subsets = false;
        std::string command;
    };

    struct CspRow
    {
        std::string instance, template_name;
        int k = 0;
        bool direct = false;
        // kres_saturate at the CNF's own width refutes.
        bool cnf_refuted = false;
        bool homomorphism = false;
        std::uint32_t cnf_vars = 0;
        std::size_t cnf_clauses = 0;
        std::size_t width = 0;
        double seconds = 0;
        std::string command;
    };

    auto experiment_csp_sweep(const CspSweepOptions & options) -> std::vector<CspRow>;
}
