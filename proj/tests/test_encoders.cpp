#include <pclab/cfi/cfi.hpp>
#include <pclab/encoders/encoders.hpp>
#include <pclab/errors.hpp>
#include <pclab/pc/saturate.hpp>
#include <pclab/resolution/engines.hpp>
#include <pclab/wl/wl.hpp>

#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace pclab;

namespace
{
    auto path3() -> ColoredGraph
    {
        ColoredGraph g{ 3 };
        g.add_edge("E", 0, 1);
        g.add_edge("E", 1, 2);
        return g;
    }

    auto k2() -> ColoredGraph
    {
        ColoredGraph g{ 2 };
        g.add_undirected("E", 0, 1);
        return g;
    }

    auto subsuming() -> KresOptions
    {
        KresOptions o;
        o.subsumption = true;
        return o;
    }

    // Renaming every variable to its negation turns a dual-Horn formula into a Horn one.
    auto flipped(const CnfFormula & f) -> CnfFormula
    {
        CnfFormula out;
        out.num_vars = f.num_vars;
        for (auto & c : f.clauses) {
            std::vector<Literal> lits;
            for (auto l : c.literals())
                lits.push_back(~l);
            out.add(Clause{ lits });
        }
        return out;
    }

    // A directed binary relation E and a unary U, both random.
    auto random_csp_structure(std::mt19937_64 & rng, std::uint32_t n, double p) -> RelStructure
    {
        std::bernoulli_distribution coin{ p };
        RelStructure a;
        a.n = n;
        a.add_relation("E", 2);
        a.add_relation("U", 1);
        for (std::uint32_t u = 0; u < n; ++u) {
            if (coin(rng))
                a.add_tuple("U", { u });
            for (std::uint32_t v = 0; v < n; ++v)
                if (coin(rng))
                    a.add_tuple("E", { u, v });
        }
        return a;
    }
}

TEST(encode_nonreach, path_of_three)
{
    auto f = encode_nonreach(path3(), 0, 2);
    EXPECT_EQ(f.clauses.size(), 4u);
    EXPECT_LE(f.max_width(), 2u);
    auto r = horn_refute(f);
    EXPECT_TRUE(r.refuted);
    EXPECT_EQ(r.derived_units, (std::vector<std::uint32_t>{ 1, 2, 3 }));
}

TEST(encode_nonreach, single_edge_and_isolated_source)
{
    ColoredGraph g{ 2 };
    g.add_edge("E", 0, 1);
    EXPECT_TRUE(horn_refute(encode_nonreach(g, 0, 1)).refuted);
    EXPECT_TRUE(kres_saturate(encode_nonreach(g, 0, 1), 2).refuted);
    EXPECT_FALSE(horn_refute(encode_nonreach(g, 1, 0)).refuted);
    EXPECT_THROW(encode_nonreach(g, 0, 2), UsageError);
}

TEST(encode_nonreach, random_digraphs_match_bfs)
{
    std::mt19937_64 rng{ 41 };
    int reachable_count = 0;
    for (int i = 0; i < 200; ++i) {
        std::uint32_t n = 2 + rng() % 49;
        auto g = random_digraph(rng, n, 1.5 / n);
        std::uint32_t s = rng() % n, t = rng() % n;
        bool expected = oracle::reach(g, s, t);
        auto f = encode_nonreach(g, s, t);
        ASSERT_EQ(horn_refute(f).refuted, expected);
        ASSERT_EQ(reachable(g, s, t), expected);
        for (auto & c : f.clauses)
            ASSERT_TRUE(c.is_horn() && c.width() <= 2);
        reachable_count += expected;
    }
    EXPECT_GT(reachable_count, 20);
    EXPECT_LT(reachable_count, 180);
}

TEST(encode_iso_cnf, small_cases)
{
    EXPECT_TRUE(oracle::satisfiable(encode_iso_cnf(k2(), k2())));
    EXPECT_FALSE(oracle::satisfiable(encode_iso_cnf(k2(), ColoredGraph{ 2 })));
}

TEST(encode_iso_cnf, random_pairs_match_isomorphism)
{
    std::mt19937_64 rng{ 43 };
    int iso_count = 0;
    for (int i = 0; i < 50; ++i) {
        std::uint32_t n = 1 + rng() % 4;
        auto g = oracle::random_graph(rng, n, 0.5), h = oracle::random_graph(rng, n, 0.5);
        bool iso = oracle::isomorphic(g, h);
        ASSERT_EQ(oracle::satisfiable(encode_iso_cnf(g, h)), iso);
        iso_count += iso;
    }
    EXPECT_GT(iso_count, 5);
    EXPECT_LT(iso_count, 45);
}

TEST(encode_iso_poly, boolean_zeros_match_cnf)
{
    std::mt19937_64 rng{ 47 };
    for (int i = 0; i < 40; ++i) {
        std::uint32_t n = 1 + rng() % 3;
        auto g = oracle::random_graph(rng, n, 0.5), h = oracle::random_graph(rng, n, 0.5);
        auto sys = encode_iso_poly(g, h);
        EXPECT_EQ(sys.num_vars, n * n);
        EXPECT_LE(sys.max_degree(), 2);
        ASSERT_EQ(oracle::has_boolean_zero(sys), oracle::satisfiable(encode_iso_cnf(g, h)));
    }
}

TEST(encode_iso_poly, identical_graphs_are_never_refuted)
{
    auto g = cycle_graph(4);
    EXPECT_TRUE(oracle::has_boolean_zero(encode_iso_poly(g, g)));
    for (int k = 2; k <= 3; ++k)
        EXPECT_FALSE(monpc_saturate(encode_iso_poly(g, g), k).refuted);
    EXPECT_FALSE(monpc_saturate(encode_iso_poly(k2(), k2()), 2).refuted);
}

TEST(encode_iso_poly, k2_against_empty_graph)
{
    auto sys = encode_iso_poly(k2(), ColoredGraph{ 2 });
    auto degree = min_refutation_degree(sys, Engine::monpc, 4);
    auto sweep = wl_sweep(k2(), ColoredGraph{ 2 }, 3);
    ASSERT_TRUE(degree.has_value());
    ASSERT_TRUE(sweep.has_value());
    EXPECT_EQ(*degree, *sweep + 1);
}

TEST(encode_iso_poly_colored, variables_only_within_classes)
{
    auto [a, b] = twisted_pair(CfiBase::library("k4"), 2);
    auto g = to_graph(a), h = to_graph(b);
    std::size_t expected = 0;
    for (auto & [colour, members] : g.color_classes())
        expected += members.size() * members.size();
    auto sys = encode_iso_poly_colored(g, h);
    EXPECT_EQ(sys.num_vars, expected);
    EXPECT_LT(sys.num_vars, std::size_t{ g.size() } * g.size());
}

TEST(encode_iso_poly_colored, rigid_graphs)
{
    // Distinct colours everywhere leave one candidate map.
    auto g = path3();
    for (std::uint32_t v = 0; v < 3; ++v)
        g.set_color(v, static_cast<int>(v));
    auto h = g;
    EXPECT_TRUE(oracle::has_boolean_zero(encode_iso_poly_colored(g, h)));
    ColoredGraph other{ 3 };
    for (std::uint32_t v = 0; v < 3; ++v)
        other.set_color(v, static_cast<int>(v));
    other.add_edge("E", 0, 2);
    other.add_edge("E", 1, 2);
    auto sys = encode_iso_poly_colored(g, other);
    EXPECT_EQ(sys.num_vars, 3u);
    EXPECT_FALSE(oracle::has_boolean_zero(sys));
}

TEST(encode_iso_poly_colored, colour_mismatch)
{
    auto g = path3(), h = path3();
    h.set_color(0, 7);
    EXPECT_THROW(encode_iso_poly_colored(g, h), UsageError);
    IsoPolyOptions o;
    o.constant_on_mismatch = true;
    auto sys = encode_iso_poly_colored(g, h, Field::rationals(), o);
    ASSERT_EQ(sys.axioms.size(), 1u);
    EXPECT_EQ(sys.axioms[0].degree(), 0);
    EXPECT_EQ(min_refutation_degree(sys, Engine::monpc, 3), 1);
}

TEST(k_consistency, two_colouring_of_small_cycles)
{
    EXPECT_TRUE(k_consistency(cycle_structure(4), clique_structure(2), 3));
    EXPECT_FALSE(k_consistency(cycle_structure(3), clique_structure(2), 3));
    EXPECT_TRUE(homomorphism_exists(cycle_structure(4), clique_structure(2)));
    EXPECT_FALSE(homomorphism_exists(cycle_structure(3), clique_structure(2)));
}

TEST(k_consistency, empty_universe)
{
    RelStructure empty;
    empty.add_relation("E", 2);
    EXPECT_TRUE(k_consistency(empty, clique_structure(2), 2));
    EXPECT_TRUE(homomorphism_exists(empty, clique_structure(2)));
}

TEST(k_consistency, errors)
{
    EXPECT_THROW(k_consistency(cycle_structure(3), clique_structure(2), 0), UsageError);
    RelStructure a;
    a.n = 1;
    a.add_tuple("F", { 0, 0 });
    EXPECT_THROW(k_consistency(a, clique_structure(2), 2), UsageError);
}

TEST(k_consistency, cnf_on_triangle_and_square)
{
    auto bad = encode_kconsistency_cnf(cycle_structure(3), clique_structure(2), 3);
    auto good = encode_kconsistency_cnf(cycle_structure(4), clique_structure(2), 3);
    auto w = static_cast<int>(std::max(bad.max_width(), good.max_width()));
    EXPECT_TRUE(kres_saturate(bad, w, subsuming()).refuted);
    EXPECT_FALSE(kres_saturate(good, w, subsuming()).refuted);
    // Extension clauses have one negative literal, restrictions too.
    for (auto & c : bad.clauses) {
        std::size_t negative = 0;
        for (auto l : c.literals())
            negative += ! l.positive;
        EXPECT_LE(negative, 1u);
    }
}

TEST(k_consistency, random_corpus)
{
    std::mt19937_64 rng{ 53 };
    int hom = 0, pruned = 0;
    for (int i = 0; i < 150; ++i) {
        auto t = random_csp_structure(rng, 1 + rng() % 3, 0.5);
        auto a = random_csp_structure(rng, rng() % 9, 0.25);
        bool exists = homomorphism_exists(a, t);
        ASSERT_EQ(exists, oracle::homomorphic(a, t));
        bool before = true;
        for (int k = 1; k <= 3; ++k) {
            bool direct = k_consistency(a, t, k);
            // A homomorphism survives every pruning round.
            if (exists)
                ASSERT_TRUE(direct);
            ASSERT_TRUE(before || ! direct);
            before = direct;
            KConsistencyOptions full;
            full.full_subsets = true;
            ASSERT_EQ(k_consistency(a, t, k, full), direct);
            auto cnf = encode_kconsistency_cnf(a, t, k);
            ASSERT_EQ(horn_refute(flipped(cnf)).refuted, ! direct);
        }
        hom += exists;
        pruned += ! before;
    }
    EXPECT_GT(hom, 10);
    EXPECT_GT(pruned, 10);
}
