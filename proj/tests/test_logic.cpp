#include <pclab/errors.hpp>
#include <pclab/logic/formula.hpp>
#include <pclab/resolution/engines.hpp>

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace pclab;

namespace
{
    auto two_points_p_holds_at_zero() -> RelStructure
    {
        RelStructure a;
        a.n = 2;
        a.add_tuple("P", { 0 });
        return a;
    }

    auto clause_set(const CnfFormula & f) -> std::vector<Clause>
    {
        auto c = f.clauses;
        std::sort(c.begin(), c.end());
        return c;
    }

    auto dimacs(std::vector<std::vector<long long>> clauses) -> std::vector<Clause>
    {
        std::vector<Clause> out;
        for (auto & c : clauses)
            out.push_back(Clause::from_dimacs(c));
        std::sort(out.begin(), out.end());
        return out;
    }
}

TEST(structure, json_round_trip_and_validation)
{
    auto a = rel_structure_from_json(nlohmann::json::parse(R"({"n": 3, "relations": {"E": {"arity": 2, "tuples": [[0, 1], [1, 2]]}}})"));
    EXPECT_EQ(a.n, 3u);
    EXPECT_TRUE(a.relation("E").contains({ 1, 2 }));
    EXPECT_EQ(rel_structure_from_json(to_json(a)).relation("E").tuples, a.relation("E").tuples);
    EXPECT_THROW(rel_structure_from_json(nlohmann::json::parse(R"({"n": 2, "relations": {"E": {"arity": 2, "tuples": [[0, 2]]}}})")), UsageError);
    EXPECT_THROW(a.add_tuple("E", { 0 }), UsageError);
}

TEST(formula, parse_errors)
{
    EXPECT_THROW(LfpFormula::parse("(not (exists x (P x)))"), UsageError);
    EXPECT_THROW(LfpFormula::parse("(P x)"), UsageError);
    EXPECT_THROW(LfpFormula::parse("(lfp R (x) (or (P x) (lfp R (y) (P y) x)) 0)"), UsageError);
    EXPECT_THROW(LfpFormula::parse("(lfp R (x) (not (R x)) 0)"), UsageError);
    EXPECT_THROW(LfpFormula::parse("(and (P 0)"), UsageError);
}

TEST(formula, shared_subformulas_are_one_node)
{
    auto f = LfpFormula::parse("(and (exists x (P x)) (exists x (P x)))");
    auto & root = f.node(f.root());
    EXPECT_EQ(root.children[0], root.children[1]);
}

TEST(formula, parameters_and_efp0)
{
    auto f = LfpFormula::parse("(exists s (lfp R (x) (or (= x s) (exists y (and (R y) (E y x)))) 0))");
    EXPECT_TRUE(f.is_efp0());
    auto params = f.parameters("R");
    ASSERT_EQ(params.size(), 1u);
    EXPECT_EQ(f.var_name(params[0]), "s");
    EXPECT_FALSE(LfpFormula::parse("(forall x (P x))").is_efp0());
}

TEST(formula, vocabulary_checks)
{
    auto f = LfpFormula::parse("(exists x (E x x))");
    EXPECT_THROW(eval_poslfp(two_points_p_holds_at_zero(), f), UsageError);
    EXPECT_THROW(eval_poslfp(two_points_p_holds_at_zero(), LfpFormula::parse("(P 5)")), UsageError);
}

TEST(eval_poslfp, trivial_existential)
{
    EXPECT_TRUE(eval_poslfp(two_points_p_holds_at_zero(), LfpFormula::parse("(exists x (= x x))")));
}

TEST(eval_poslfp, reachability_on_one_edge)
{
    RelStructure a;
    a.n = 2;
    a.add_tuple("E", { 0, 1 });
    auto f = LfpFormula::parse("(lfp R (x) (or (= x s) (exists y (and (R y) (E y x)))) t)", { { "s", 0 }, { "t", 1 } });
    EXPECT_TRUE(eval_poslfp(a, f));
    auto back = LfpFormula::parse("(lfp R (x) (or (= x s) (exists y (and (R y) (E y x)))) t)", { { "s", 1 }, { "t", 0 } });
    EXPECT_FALSE(eval_poslfp(a, back));
}

TEST(horn_encode, existential_clauses)
{
    auto h = horn_encode(two_points_p_holds_at_zero(), LfpFormula::parse("(exists x (P x))"));
    EXPECT_EQ(h.names.size(), 3u);
    // 1 = the sentence, 2 = P(0), 3 = P(1).
    EXPECT_EQ(clause_set(h.cnf), dimacs({ { 2 }, { -3 }, { 1, -2 }, { 1, -3 }, { -1 } }));
    EXPECT_TRUE(horn_refute(h.cnf).refuted);
}

TEST(horn_encode, universal_uses_one_wide_clause)
{
    auto h = horn_encode(two_points_p_holds_at_zero(), LfpFormula::parse("(forall x (P x))"));
    EXPECT_EQ(clause_set(h.cnf), dimacs({ { 2 }, { -3 }, { 1, -2, -3 }, { -1 } }));
    EXPECT_FALSE(horn_refute(h.cnf).refuted);
}

TEST(horn_encode, var_map_is_injective)
{
    auto h = horn_encode(two_points_p_holds_at_zero(), LfpFormula::parse("(lfp R (x) (or (P x) (exists y (and (R y) (= x x)))) 1)"));
    std::set<std::uint32_t> ids;
    for (auto & [name, id] : h.var_map)
        EXPECT_TRUE(ids.insert(id).second) << name;
    EXPECT_EQ(ids.size(), h.cnf.num_vars);
}

TEST(horn_encode, random_corpus_matches_stage_tables)
{
    std::mt19937_64 rng{ 2718 };
    int checked = 0, true_count = 0, efp0 = 0;
    for (int s = 0; s < 100; ++s) {
        std::uint32_t n = 1 + rng() % 5;
        auto a = oracle::random_structure(rng, n);
        for (int i = 0; i < 20; ++i) {
            oracle::FormulaGenerator gen{ rng, n, i % 2 == 0 };
            auto fm = gen.sentence();
            auto text = fm->sexp();
            auto phi = LfpFormula::parse(text);
            bool expected = oracle::StageEvaluator{ a }.holds(*fm, {});
            ASSERT_EQ(eval_poslfp(a, phi), expected) << text;
            auto h = horn_encode(a, phi);
            for (auto & c : h.cnf.clauses)
                ASSERT_TRUE(c.is_horn());
            ASSERT_EQ(horn_refute(h.cnf).refuted, expected) << text;
            // Linear size: each instantiated subformula contributes at most max(n, 2) clauses.
            EXPECT_LE(h.cnf.clauses.size(), std::max<std::size_t>(n, 2) * h.cnf.num_vars + 1) << text;
            if (phi.is_efp0()) {
                ++efp0;
                ASSERT_LE(h.cnf.max_width(), 3u) << text;
                KresOptions o;
                o.subsumption = true;
                ASSERT_EQ(kres_saturate(h.cnf, 3, o).refuted, expected) << text;
            }
            ++checked;
            true_count += expected;
        }
    }
    EXPECT_EQ(checked, 2000);
    // The corpus must exercise both verdicts and the width-three path.
    EXPECT_GT(true_count, 300);
    EXPECT_LT(true_count, 1700);
    EXPECT_GT(efp0, 500);
}
