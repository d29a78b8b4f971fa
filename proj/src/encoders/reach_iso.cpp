#include <pclab/encoders/encoders.hpp>
#include <pclab/errors.hpp>

#include <set>

using std::optional;
using std::size_t;
using std::string;
using std::uint32_t;
using std::vector;

namespace pclab
{
    namespace
    {
        struct RelationPairs
        {
            vector<std::pair<optional<size_t>, optional<size_t>>> pairs;

            RelationPairs(const ColoredGraph & g, const ColoredGraph & h)
            {
                std::set<string> names;
                for (auto & r : g.relations())
                    names.insert(r.name);
                for (auto & r : h.relations())
                    names.insert(r.name);
                for (auto & name : names)
                    pairs.emplace_back(g.find_relation(name), h.find_relation(name));
            }
        };

        auto edge(const ColoredGraph & g, const optional<size_t> & r, uint32_t u, uint32_t v) -> bool
        {
            return r && g.has_edge(*r, u, v);
        }

        auto single_ok(const ColoredGraph & g, const ColoredGraph & h, const RelationPairs & rels, uint32_t v, uint32_t w) -> bool
        {
            if (g.color(v) != h.color(w))
                return false;
            for (auto & [rg, rh] : rels.pairs)
                if (edge(g, rg, v, v) != edge(h, rh, w, w))
                    return false;
            return true;
        }

        auto pair_ok(const ColoredGraph & g, const ColoredGraph & h, const RelationPairs & rels,
                uint32_t v1, uint32_t w1, uint32_t v2, uint32_t w2) -> bool
        {
            if ((v1 == v2) != (w1 == w2))
                return false;
            if (v1 == v2)
                return true;
            for (auto & [rg, rh] : rels.pairs)
                if (edge(g, rg, v1, v2) != edge(h, rh, w1, w2) || edge(g, rg, v2, v1) != edge(h, rh, w2, w1))
                    return false;
            return true;
        }

        struct IsoVar
        {
            uint32_t v, w;
        };

        auto build_poly(const ColoredGraph & g, const ColoredGraph & h, const Field & field, const vector<IsoVar> & vars) -> PolySystem
        {
            RelationPairs rels{ g, h };
            PolySystem sys;
            sys.field = field;
            sys.num_vars = static_cast<uint32_t>(vars.size());
            for (auto & x : vars)
                sys.names.push_back("X[" + std::to_string(x.v) + "->" + std::to_string(x.w) + "]");

            auto one = Scalar::one(field);
            vector<vector<Var>> by_v(g.size()), by_w(h.size());
            for (size_t i = 0; i < vars.size(); ++i) {
                by_v[vars[i].v].push_back(static_cast<Var>(i + 1));
                by_w[vars[i].w].push_back(static_cast<Var>(i + 1));
            }
            auto sum_minus_one = [&] (const vector<Var> & xs) {
                Polynomial p{ field };
                for (auto x : xs)
                    p.add_term(Monomial{ x }, one);
                p.add_term(Monomial{}, -one);
                sys.axioms.push_back(std::move(p));
            };
            for (auto & xs : by_v)
                sum_minus_one(xs);
            for (auto & xs : by_w)
                sum_minus_one(xs);

            vector<std::uint8_t> usable(vars.size(), 1);
            for (size_t i = 0; i < vars.size(); ++i)
                if (! single_ok(g, h, rels, vars[i].v, vars[i].w)) {
                    usable[i] = 0;
                    sys.axioms.push_back(Polynomial::term(one, Monomial{ static_cast<Var>(i + 1) }));
                }
            for (size_t i = 0; i < vars.size(); ++i) {
                if (! usable[i])
                    continue;
                for (size_t j = i + 1; j < vars.size(); ++j)
                    if (usable[j] && ! pair_ok(g, h, rels, vars[i].v, vars[i].w, vars[j].v, vars[j].w))
                        sys.axioms.push_back(Polynomial::term(one, Monomial{ static_cast<Var>(i + 1), static_cast<Var>(j + 1) }));
            }
            return sys;
        }
    }

    auto compatible_single(const ColoredGraph & g, const ColoredGraph & h, uint32_t v, uint32_t w) -> bool
    {
        return single_ok(g, h, RelationPairs{ g, h }, v, w);
    }

    auto compatible_pair(const ColoredGraph & g, const ColoredGraph & h, uint32_t v1, uint32_t w1, uint32_t v2, uint32_t w2) -> bool
    {
        RelationPairs rels{ g, h };
        return single_ok(g, h, rels, v1, w1) && single_ok(g, h, rels, v2, w2) && pair_ok(g, h, rels, v1, w1, v2, w2);
    }

    auto encode_iso_cnf(const ColoredGraph & g, const ColoredGraph & h) -> CnfFormula
    {
        RelationPairs rels{ g, h };
        uint32_t ng = g.size(), nh = h.size();
        auto x = [&] (uint32_t v, uint32_t w) { return v * nh + w + 1; };
        CnfFormula f;
        f.num_vars = ng * nh;

        for (uint32_t v = 0; v < ng; ++v) {
            vector<Literal> lits;
            for (uint32_t w = 0; w < nh; ++w)
                lits.push_back(pos(x(v, w)));
            f.add(Clause{ std::move(lits) });
        }
        for (uint32_t w = 0; w < nh; ++w) {
            vector<Literal> lits;
            for (uint32_t v = 0; v < ng; ++v)
                lits.push_back(pos(x(v, w)));
            f.add(Clause{ std::move(lits) });
        }

        vector<std::uint8_t> usable(size_t(ng) * nh, 1);
        for (uint32_t v = 0; v < ng; ++v)
            for (uint32_t w = 0; w < nh; ++w)
                if (! single_ok(g, h, rels, v, w)) {
                    usable[x(v, w) - 1] = 0;
                    f.add(Clause{ { neg(x(v, w)) } });
                }
        for (uint32_t a = 1; a <= f.num_vars; ++a)
            for (uint32_t b = a + 1; b <= f.num_vars; ++b) {
                if (! usable[a - 1] || ! usable[b - 1])
                    continue;
                uint32_t v1 = (a - 1) / nh, w1 = (a - 1) % nh, v2 = (b - 1) / nh, w2 = (b - 1) % nh;
                if (! pair_ok(g, h, rels, v1, w1, v2, w2))
                    f.add(Clause{ { neg(a), neg(b) } });
            }
        return f;
    }

    auto encode_iso_poly(const ColoredGraph & g, const ColoredGraph & h, const Field & field) -> PolySystem
    {
        vector<IsoVar> vars;
        for (uint32_t v = 0; v < g.size(); ++v)
            for (uint32_t w = 0; w < h.size(); ++w)
                vars.push_back({ v, w });
        return build_poly(g, h, field, vars);
    }

    auto encode_iso_poly_colored(const ColoredGraph & g, const ColoredGraph & h, const Field & field, const IsoPolyOptions & options) -> PolySystem
    {
        auto cg = g.color_classes(), ch = h.color_classes();
        bool same = cg.size() == ch.size();
        for (size_t i = 0; same && i < cg.size(); ++i)
            same = cg[i].first == ch[i].first;
        if (! same) {
            if (! options.constant_on_mismatch)
                throw UsageError("colour classes of the two graphs do not match");
            PolySystem sys;
            sys.field = field;
            sys.axioms.push_back(Polynomial::constant(field, 1));
            return sys;
        }

        vector<IsoVar> vars;
        for (uint32_t v = 0; v < g.size(); ++v)
            for (uint32_t w = 0; w < h.size(); ++w)
                if (g.color(v) == h.color(w))
                    vars.push_back({ v, w });
        return build_poly(g, h, field, vars);
    }
}
