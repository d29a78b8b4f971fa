#include <pclab/harness/experiments.hpp>
#include <pclab/cfi/cfi.hpp>
#include <pclab/encoders/encoders.hpp>
#include <pclab/errors.hpp>
#include <pclab/pc/saturate.hpp>
#include <pclab/resolution/engines.hpp>
#include <pclab/wl/wl.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

using std::size_t;
using std::string;
using std::uint32_t;
using std::vector;
using Clock = std::chrono::steady_clock;

namespace pclab
{
    namespace
    {
        auto seconds_since(Clock::time_point t) -> double
        {
            return std::chrono::duration<double>(Clock::now() - t).count();
        }

        auto deadline_after(double seconds) -> Clock::time_point
        {
            return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
        }

        auto union_of_cycles(const vector<uint32_t> & lengths) -> ColoredGraph
        {
            ColoredGraph g{ std::accumulate(lengths.begin(), lengths.end(), 0u) };
            g.relation_index("E");
            uint32_t base = 0;
            for (auto len : lengths) {
                for (uint32_t i = 0; i < len; ++i)
                    g.add_undirected("E", base + i, base + (i + 1) % len);
                base += len;
            }
            return g;
        }

        auto from_edges(uint32_t n, const vector<std::pair<uint32_t, uint32_t>> & edges) -> ColoredGraph
        {
            ColoredGraph g{ n };
            g.relation_index("E");
            for (auto [u, v] : edges)
                g.add_undirected("E", u, v);
            return g;
        }

        auto prism_graph(uint32_t len) -> ColoredGraph
        {
            vector<std::pair<uint32_t, uint32_t>> edges;
            for (uint32_t i = 0; i < len; ++i) {
                edges.emplace_back(i, (i + 1) % len);
                edges.emplace_back(len + i, len + (i + 1) % len);
                edges.emplace_back(i, len + i);
            }
            return from_edges(2 * len, edges);
        }

        auto base_as_graph(const string & name) -> ColoredGraph
        {
            auto b = CfiBase::library(name);
            return from_edges(b.num_vertices(), b.edges());
        }

        auto shuffled(const ColoredGraph & g, std::uint64_t seed) -> ColoredGraph
        {
            vector<uint32_t> perm(g.size());
            std::iota(perm.begin(), perm.end(), 0u);
            std::mt19937_64 rng{ seed };
            std::shuffle(perm.begin(), perm.end(), rng);
            return g.relabeled(perm);
        }

        auto iso_system(const ColoredGraph & g, const ColoredGraph & h, const Field & field) -> PolySystem
        {
            IsoPolyOptions opts;
            opts.constant_on_mismatch = true;
            return encode_iso_poly_colored(g, h, field, opts);
        }
    }

    auto cell_status_name(CellStatus s) -> string
    {
        switch (s) {
            case CellStatus::done: return "done";
            case CellStatus::timeout: return "timeout";
            case CellStatus::limit: return "limit";
        }
        return "?";
    }

    auto run_cells(size_t count, unsigned jobs, const std::function<void (size_t)> & run) -> void
    {
        jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<size_t>(count, 1))));
        if (jobs == 1) {
            for (size_t i = 0; i < count; ++i)
                run(i);
            return;
        }
        std::atomic<size_t> next{ 0 };
        std::exception_ptr failure;
        std::mutex failure_mutex;
        {
            vector<std::jthread> workers;
            for (unsigned w = 0; w < jobs; ++w)
                workers.emplace_back([&] {
                    for (size_t i; (i = next++) < count;) {
                        try {
                            run(i);
                        }
                        catch (...) {
                            std::lock_guard lock{ failure_mutex };
                            if (! failure)
                                failure = std::current_exception();
                        }
                    }
                });
        }
        if (failure)
            std::rethrow_exception(failure);
    }

    auto search_refutation_degree(const ColoredGraph & g, const ColoredGraph & h, const Field & field, int k_max,
            const CellBudget & budget) -> DegreeSearch
    {
        DegreeSearch out;
        auto start = Clock::now();
        auto sys = iso_system(g, h, field);
        SaturateOptions opts;
        opts.stop_on_refutation = true;
        opts.deadline = deadline_after(budget.seconds);
        opts.monomial_limit = budget.monomial_limit;
        try {
            for (int k = std::max(1, sys.max_degree()); k <= k_max; ++k) {
                auto r = monpc_saturate(sys, k, opts);
                out.saturations.emplace_back(k, r.stats.basis_dimension, r.stats.live_monomials);
                if (r.refuted) {
                    out.degree = k;
                    break;
                }
                out.completed = k;
            }
        }
        catch (const Timeout &) {
            out.status = CellStatus::timeout;
        }
        catch (const ResourceLimit &) {
            out.status = CellStatus::limit;
        }
        catch (const std::bad_alloc &) {
            out.status = CellStatus::limit;
        }
        out.seconds = seconds_since(start);
        return out;
    }

    auto search_wl_dimension(const ColoredGraph & g, const ColoredGraph & h, int dim_max, const CellBudget & budget) -> WlSearch
    {
        WlSearch out;
        auto start = Clock::now();
        WlOptions opts;
        opts.deadline = deadline_after(budget.seconds);
        opts.tuple_limit = budget.tuple_limit;
        try {
            for (int d = 1; d <= dim_max; ++d) {
                if (wl_distinguishes(g, h, d, opts)) {
                    out.dim = d;
                    break;
                }
                out.completed = d;
            }
        }
        catch (const Timeout &) {
            out.status = CellStatus::timeout;
        }
        catch (const ResourceLimit &) {
            out.status = CellStatus::limit;
        }
        catch (const std::bad_alloc &) {
            out.status = CellStatus::limit;
        }
        out.seconds = seconds_since(start);
        return out;
    }

    auto experiment_degree_growth(const DegreeGrowthOptions & options) -> vector<DegreeGrowthRow>
    {
        if (options.field.is_prime() && options.field.characteristic() == options.p)
            throw UsageError("the field characteristic must differ from p");
        if (options.k_max < 1 || options.wl_dim_max < 1)
            throw UsageError("k_max and wl_dim_max must be at least 1");

        vector<CfiBase> bases;
        for (auto & name : options.bases)
            bases.push_back(CfiBase::library(name));
        std::stable_sort(bases.begin(), bases.end(), [] (const CfiBase & a, const CfiBase & b) {
            return a.num_vertices() != b.num_vertices() ? a.num_vertices() < b.num_vertices() : a.name() < b.name();
        });

        vector<DegreeGrowthRow> rows(bases.size());
        vector<ColoredGraph> gs, hs;
        for (size_t i = 0; i < bases.size(); ++i) {
            auto [a, b] = twisted_pair(bases[i], options.p);
            gs.push_back(to_graph(a));
            hs.push_back(to_graph(b));
            auto & row = rows[i];
            row.base = bases[i].name();
            row.base_vertices = bases[i].num_vertices();
            row.p = options.p;
            row.field = options.field.to_string();
            row.graph_vertices = gs.back().size();
            auto sys = iso_system(gs.back(), hs.back(), options.field);
            row.iso_vars = sys.num_vars;
            row.iso_axioms = sys.axioms.size();
            row.command = options.command;
        }

        // Cells: (base, pc) and (base, wl), merged by index.
        run_cells(2 * bases.size(), options.budget.jobs, [&] (size_t cell) {
            size_t i = cell / 2;
            if (cell % 2 == 0)
                rows[i].pc = search_refutation_degree(gs[i], hs[i], options.field, options.k_max, options.budget);
            else
                rows[i].wl = search_wl_dimension(gs[i], hs[i], options.wl_dim_max, options.budget);
        });

        if (options.control)
            run_cells(bases.size(), options.budget.jobs, [&] (size_t i) {
                int top = rows[i].pc.degree.value_or(std::max(rows[i].pc.completed, 1));
                auto control = search_refutation_degree(gs[i], gs[i], options.field, top, options.budget);
                if (control.status == CellStatus::done)
                    rows[i].control_refuted = control.degree.has_value();
            });
        return rows;
    }

    auto calibration_corpus(bool include_cfi) -> vector<CalibrationPair>
    {
        vector<CalibrationPair> out;
        auto add = [&] (string name, ColoredGraph g, ColoredGraph h) {
            out.push_back({ std::move(name), std::move(g), std::move(h) });
        };

        add("2C3~C6", union_of_cycles({ 3, 3 }), union_of_cycles({ 6 }));
        add("C3+C4~C7", union_of_cycles({ 3, 4 }), union_of_cycles({ 7 }));
        add("2C4~C8", union_of_cycles({ 4, 4 }), union_of_cycles({ 8 }));
        add("C3+C5~C8", union_of_cycles({ 3, 5 }), union_of_cycles({ 8 }));
        add("3C3~C9", union_of_cycles({ 3, 3, 3 }), union_of_cycles({ 9 }));
        add("C4+C5~C9", union_of_cycles({ 4, 5 }), union_of_cycles({ 9 }));
        add("2C5~C10", union_of_cycles({ 5, 5 }), union_of_cycles({ 10 }));
        add("K33~prism", from_edges(6, { { 0, 3 }, { 0, 4 }, { 0, 5 }, { 1, 3 }, { 1, 4 }, { 1, 5 }, { 2, 3 }, { 2, 4 }, { 2, 5 } }),
                prism_graph(3));
        {
            vector<std::pair<uint32_t, uint32_t>> wagner;
            for (uint32_t i = 0; i < 8; ++i) {
                wagner.emplace_back(i, (i + 1) % 8);
                if (i < 4)
                    wagner.emplace_back(i, i + 4);
            }
            add("cube~wagner", base_as_graph("cube"), from_edges(8, wagner));
        }
        add("petersen~C5xK2", base_as_graph("petersen"), prism_graph(5));
        add("P4~K13", from_edges(4, { { 0, 1 }, { 1, 2 }, { 2, 3 } }), from_edges(4, { { 0, 1 }, { 0, 2 }, { 0, 3 } }));
        add("K4~C4", complete_graph(4), cycle_graph(4));
        add("P5~K14", from_edges(5, { { 0, 1 }, { 1, 2 }, { 2, 3 }, { 3, 4 } }), from_edges(5, { { 0, 1 }, { 0, 2 }, { 0, 3 }, { 0, 4 } }));
        add("2K3~K33", union_of_cycles({ 3, 3 }), out[7].g);
        {
            auto a = cycle_graph(6), b = cycle_graph(6);
            a.set_color(0, 1);
            a.set_color(1, 1);
            b.set_color(0, 1);
            b.set_color(3, 1);
            add("C6-marked-adjacent~C6-marked-opposite", a, b);
            auto c = union_of_cycles({ 3, 3 }), d = union_of_cycles({ 6 });
            c.set_color(0, 1);
            d.set_color(0, 1);
            add("2C3-marked~C6-marked", c, d);
            add("C6-marked~shuffled", b, shuffled(b, 7));
        }
        add("C5~shuffled", cycle_graph(5), shuffled(cycle_graph(5), 1));
        add("K33~shuffled", out[7].g, shuffled(out[7].g, 2));
        add("2C3~shuffled", union_of_cycles({ 3, 3 }), shuffled(union_of_cycles({ 3, 3 }), 3));
        {
            std::mt19937_64 rng{ 2024 };
            for (int i = 0; i < 3; ++i) {
                auto g = random_graph(rng, 7, 0.5);
                auto h = random_graph(rng, 7, 0.5);
                add("G(7,1/2)#" + std::to_string(i), g, h);
            }
        }
        if (include_cfi) {
            auto base = CfiBase::library("k4");
            auto [a, b] = twisted_pair(base, 2);
            add("CFI(K4,2)", to_graph(a), to_graph(b));
            vector<uint32_t> lambda(base.num_vertices(), 0);
            lambda.back() = 1;
            add("CFI(K4,2)-twist-at-3", to_graph(a), to_graph(build_cfi(base, 2, lambda)));
        }
        return out;
    }

    auto experiment_wl_calibrate(const vector<CalibrationPair> & pairs, const CalibrationOptions & options) -> CalibrationReport
    {
        CalibrationReport report;
        report.command = options.command;
        report.rows.resize(pairs.size());
        run_cells(2 * pairs.size(), options.budget.jobs, [&] (size_t cell) {
            size_t i = cell / 2;
            auto & row = report.rows[i];
            if (cell % 2 == 0) {
                row.name = pairs[i].name;
                row.vertices = std::max(pairs[i].g.size(), pairs[i].h.size());
                row.pc = search_refutation_degree(pairs[i].g, pairs[i].h, options.field, options.k_max, options.budget);
            }
            else
                row.wl = search_wl_dimension(pairs[i].g, pairs[i].h, options.wl_dim_max, options.budget);
        });

        vector<int> offsets;
        for (auto & row : report.rows) {
            if (row.pc.status != CellStatus::done || row.wl.status != CellStatus::done)
                ++report.skipped;
            else if (row.pc.degree && row.wl.dim)
                offsets.push_back(*row.pc.degree - *row.wl.dim);
        }
        if (offsets.empty())
            return report;
        int c = offsets.front();
        report.offset = c;
        report.uniform = std::all_of(offsets.begin(), offsets.end(), [&] (int d) { return d == c; });
        // A one-sided row is consistent when the missing side lies beyond its search bound.
        for (auto & row : report.rows) {
            if (row.pc.status != CellStatus::done || row.wl.status != CellStatus::done)
                continue;
            if (row.pc.degree && ! row.wl.dim && *row.pc.degree - c <= options.wl_dim_max)
                report.uniform = false;
            if (! row.pc.degree && row.wl.dim && *row.wl.dim + c <= options.k_max)
                report.uniform = false;
        }
        return report;
    }

    auto experiment_csp_sweep(const CspSweepOptions & options) -> vector<CspRow>
    {
        if (options.min_cycle < 3 || options.max_cycle < options.min_cycle)
            throw UsageError("cycle range must satisfy 3 <= min <= max");
        if (options.template_size < 1)
            throw UsageError("template size must be at least 1");
        auto t = clique_structure(options.template_size);
        vector<CspRow> rows;
        for (uint32_t n = options.min_cycle; n <= options.max_cycle; ++n)
            for (int k : options.ks) {
                auto start = Clock::now();
                auto a = cycle_structure(n);
                KConsistencyOptions kopts;
                kopts.full_subsets = options.full_subsets;
                CspRow row;
                row.instance = "C" + std::to_string(n);
                row.template_name = "K" + std::to_string(options.template_size);
                row.k = k;
                row.direct = k_consistency(a, t, k, kopts);
                auto cnf = encode_kconsistency_cnf(a, t, k, kopts);
                row.cnf_vars = cnf.num_vars;
                row.cnf_clauses = cnf.clauses.size();
                row.width = std::max<size_t>(1, cnf.max_width());
                // Subsumption keeps the verdict and avoids the full width-k closure.
                KresOptions ropts;
                ropts.subsumption = true;
                row.cnf_refuted = kres_saturate(cnf, static_cast<int>(row.width), ropts).refuted;
                row.homomorphism = homomorphism_exists(a, t);
                row.seconds = seconds_since(start);
                row.command = options.command;
                rows.push_back(std::move(row));
            }
        return rows;
    }
}
