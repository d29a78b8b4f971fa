#include <pclab/cfi/cfi.hpp>
#include <pclab/errors.hpp>
#include <pclab/wl/wl.hpp>

#include "support/cfi_oracles.hpp"

#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace pclab;

namespace
{
    auto k4() -> CfiBase { return CfiBase::library("k4"); }

    auto orbit_set(std::vector<std::vector<std::uint32_t>> orbits) -> std::set<std::vector<std::uint32_t>>
    {
        std::set<std::vector<std::uint32_t>> out;
        for (auto & o : orbits) {
            std::sort(o.begin(), o.end());
            out.insert(o);
        }
        return out;
    }
}

TEST(cfi_base, library_and_validation)
{
    for (auto & name : CfiBase::library_names()) {
        auto b = CfiBase::library(name);
        EXPECT_EQ(b.num_edges() * 2, b.num_vertices() * 3u) << name;
    }
    EXPECT_EQ(CfiBase::library("petersen").num_vertices(), 10u);
    EXPECT_THROW(CfiBase("square", 4, { { 0, 1 }, { 1, 2 }, { 2, 3 }, { 0, 3 } }), UsageError);
    // Two disjoint K4s are 3-regular but disconnected.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> two;
    for (std::uint32_t off : { 0u, 4u })
        for (std::uint32_t u = 0; u < 4; ++u)
            for (std::uint32_t v = u + 1; v < 4; ++v)
                two.push_back({ off + u, off + v });
    EXPECT_THROW(CfiBase("2k4", 8, two), UsageError);
    EXPECT_THROW(CfiBase::library("heawood"), UsageError);
}

TEST(cfi_base, text_format)
{
    std::istringstream in{ "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n" };
    auto b = CfiBase::read_text(in);
    EXPECT_EQ(b.edges(), k4().edges());
}

TEST(build_cfi, k4_counts)
{
    auto s = build_cfi(k4(), 2, { 0, 0, 0, 0 });
    EXPECT_EQ(s.universe_size(), 24u);
    EXPECT_EQ(s.tuples().size(), 16u);
    for (auto & t : s.tuples())
        EXPECT_EQ((t.elements[0] % 2 + t.elements[1] % 2 + t.elements[2] % 2) % 2, 0u);
}

TEST(build_cfi, cycles_and_inverse_pairs)
{
    for (std::uint32_t p : { 2u, 3u }) {
        auto s = build_cfi(k4(), p, std::vector<std::uint32_t>(4, 0));
        std::map<std::size_t, std::size_t> per_class;
        for (auto [a, b] : s.cycle()) {
            EXPECT_EQ(s.edge_class(a), s.edge_class(b));
            ++per_class[s.edge_class(a)];
        }
        EXPECT_EQ(per_class.size(), s.base().directed().size());
        for (auto & [c, n] : per_class)
            EXPECT_EQ(n, p);
        std::set<std::pair<std::uint32_t, std::uint32_t>> inv(s.inverse_pairs().begin(), s.inverse_pairs().end());
        std::map<std::uint32_t, int> degree;
        for (auto [a, b] : inv) {
            EXPECT_TRUE(inv.contains({ b, a }));
            EXPECT_EQ(s.edge_class(b), s.base().inverse(s.edge_class(a)));
            ++degree[a];
        }
        EXPECT_EQ(degree.size(), s.universe_size());
        for (auto & [a, d] : degree)
            EXPECT_EQ(d, 1);
    }
}

TEST(build_cfi, rejects_bad_loads)
{
    EXPECT_THROW(build_cfi(k4(), 2, { 0, 0, 0 }), UsageError);
    EXPECT_THROW(build_cfi(k4(), 2, { 0, 0, 0, 2 }), UsageError);
    EXPECT_THROW(build_cfi(k4(), 4, { 0, 0, 0, 0 }), UsageError);
}

TEST(automorphism_space, k4_dimension_matches_brute_force)
{
    for (std::uint32_t p : { 2u, 3u }) {
        auto aut = automorphism_space(k4(), p);
        EXPECT_EQ(aut.dimension(), 3u);
        EXPECT_EQ(oracle::ipow(p, aut.dimension()), oracle::brute_force_kernel_size(k4(), p));
        for (auto & v : aut.basis) {
            EXPECT_TRUE(satisfies_inv(k4(), p, v));
            EXPECT_TRUE(satisfies_cfi(k4(), p, v));
        }
    }
}

TEST(automorphism_space, cycle_space_dimension_of_library)
{
    for (auto & name : CfiBase::library_names()) {
        auto b = CfiBase::library(name);
        EXPECT_EQ(automorphism_space(b, 2).dimension(), b.num_edges() - b.num_vertices() + 1) << name;
    }
}

TEST(apply_shift, zero_and_group_elements_fix_the_load)
{
    auto s = build_cfi(k4(), 3, { 1, 0, 2, 0 });
    auto zero = apply_shift(s, std::vector<std::uint32_t>(s.base().directed().size(), 0));
    EXPECT_EQ(zero.lambda(), s.lambda());
    for (auto & v : automorphism_space(k4(), 3).basis) {
        auto t = apply_shift(s, v);
        EXPECT_EQ(t.lambda(), s.lambda());
        EXPECT_TRUE(is_cfi_isomorphism(s, t, shift_map(s, v)));
    }
}

TEST(apply_shift, inverse_respecting_shifts_keep_the_load_sum)
{
    std::mt19937_64 rng{ 19 };
    for (std::uint32_t p : { 2u, 3u })
        for (int i = 0; i < 50; ++i) {
            auto b = k4();
            std::vector<std::uint32_t> lambda(4), pi(b.directed().size(), 0);
            for (auto & x : lambda)
                x = rng() % p;
            for (std::size_t e = 0; e < pi.size(); ++e)
                if (e < b.inverse(e)) {
                    pi[e] = rng() % p;
                    pi[b.inverse(e)] = (p - pi[e]) % p;
                }
            auto s = build_cfi(b, p, lambda);
            auto t = apply_shift(s, pi);
            EXPECT_EQ(t.lambda_sum(), s.lambda_sum());
            EXPECT_TRUE(is_cfi_isomorphism(s, t, shift_map(s, pi)));
            EXPECT_TRUE(oracle::maps_onto(s, t, shift_map(s, pi)));
        }
}

TEST(apply_shift, rejects_inverse_violations)
{
    auto s = build_cfi(k4(), 2, { 0, 0, 0, 0 });
    std::vector<std::uint32_t> pi(s.base().directed().size(), 0);
    pi[0] = 1;
    EXPECT_THROW(apply_shift(s, pi), UsageError);
}

TEST(cfi_isomorphic, twisted_pair_and_identity)
{
    auto [a, b] = twisted_pair(k4(), 2);
    EXPECT_FALSE(cfi_isomorphic(a, b));
    EXPECT_TRUE(cfi_isomorphic(a, a));
    EXPECT_EQ(a.lambda_sum(), 0u);
    EXPECT_EQ(b.lambda_sum(), 1u);
    EXPECT_EQ(b.lambda()[0], 1u);
    EXPECT_EQ(a.cycle(), b.cycle());
    EXPECT_EQ(a.inverse_pairs(), b.inverse_pairs());
    EXPECT_THROW(cfi_isomorphic(a, build_cfi(k4(), 3, { 0, 0, 0, 0 })), UsageError);
}

TEST(cfi_isomorphic, agrees_with_shift_search_on_k4)
{
    auto zero = build_cfi(k4(), 2, { 0, 0, 0, 0 });
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
        std::vector<std::uint32_t> lambda{ mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1 };
        auto s = build_cfi(k4(), 2, lambda);
        EXPECT_EQ(cfi_isomorphic(zero, s), oracle::shift_isomorphic(zero, s)) << mask;
    }
}

TEST(to_graph, k4_shape)
{
    auto s = build_cfi(k4(), 2, { 0, 0, 0, 0 });
    auto g = to_graph(s);
    EXPECT_EQ(g.size(), 40u);
    auto r = *g.find_relation("R");
    std::vector<int> degree(g.size(), 0);
    for (auto [u, v] : g.relations()[r].edges)
        ++degree[u];
    for (std::uint32_t v = s.universe_size(); v < g.size(); ++v)
        EXPECT_EQ(degree[v], 3);
    for (auto & [color, members] : g.color_classes())
        EXPECT_LE(members.size(), 4u);
}

TEST(to_graph, twisted_pair_graphs_are_not_isomorphic)
{
    auto [a, b] = twisted_pair(k4(), 2);
    EXPECT_FALSE(find_isomorphism(to_graph(a), to_graph(b)).has_value());
    auto shifted = apply_shift(a, automorphism_space(k4(), 2).basis[0]);
    EXPECT_TRUE(find_isomorphism(to_graph(a), to_graph(shifted)).has_value());
}

TEST(to_graph, wl_needs_dimension_three_on_k4)
{
    auto [a, b] = twisted_pair(k4(), 2);
    auto g = to_graph(a), h = to_graph(b);
    EXPECT_FALSE(wl_distinguishes(g, h, 1));
    EXPECT_FALSE(wl_distinguishes(g, h, 2));
    EXPECT_TRUE(wl_distinguishes(g, h, 3));
}

TEST(coordinate_orbits, k4_classes_are_orbits)
{
    auto s = build_cfi(k4(), 3, { 0, 0, 0, 0 });
    auto aut = automorphism_space(k4(), 3);
    auto orbits = coordinate_orbits(s, aut);
    EXPECT_EQ(orbits.size(), s.base().directed().size());
    for (auto & o : orbits) {
        ASSERT_EQ(o.size(), 3u);
        EXPECT_EQ(s.edge_class(o[0]), s.edge_class(o[2]));
    }
}

TEST(coordinate_orbits, empty_space_gives_singletons)
{
    auto s = build_cfi(k4(), 2, { 0, 0, 0, 0 });
    auto orbits = coordinate_orbits(s, AutSpace{ 2, {} });
    EXPECT_EQ(orbits.size(), s.universe_size());
}

TEST(coordinate_orbits, invariant_under_basis_change)
{
    auto s = build_cfi(CfiBase::library("prism"), 3, std::vector<std::uint32_t>(6, 0));
    auto aut = automorphism_space(s.base(), 3);
    auto changed = aut;
    for (std::size_t i = 1; i < changed.basis.size(); ++i)
        for (std::size_t e = 0; e < changed.basis[i].size(); ++e)
            changed.basis[i][e] = (changed.basis[i][e] + 2 * changed.basis[i - 1][e]) % 3;
    // Adding multiples of earlier vectors keeps the span.
    EXPECT_EQ(orbit_set(coordinate_orbits(s, aut)), orbit_set(coordinate_orbits(s, changed)));
}

TEST(cfi, json_has_metadata)
{
    auto s = build_cfi(k4(), 2, { 1, 0, 0, 0 });
    auto j = to_json(s);
    EXPECT_EQ(j.at("n"), 24);
    EXPECT_TRUE(j.contains("cfi"));
    EXPECT_EQ(j.at("relations").at("R").at("tuples").size(), 16u);
}
