#pragma once

// Independent reference implementations used by the tests. Nothing here calls into the
// library's algorithms; only its data types are read.

#include <pclab/logic/structure.hpp>
#include <pclab/pc/poly_system.hpp>
#include <pclab/resolution/cnf.hpp>
#include <pclab/wl/colored_graph.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle
{
    using pclab::Clause;
    using pclab::CnfFormula;
    using pclab::Literal;

    // Exhaustive satisfiability over all 2^n assignments.
    inline auto satisfiable(const CnfFormula & f) -> bool
    {
        std::uint32_t n = f.num_vars;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{ 1 } << n); ++bits) {
            bool all = true;
            for (auto & c : f.clauses) {
                bool sat = false;
                for (auto & l : c.literals())
                    if (((bits >> (l.var - 1)) & 1) == (l.positive ? 1u : 0u)) {
                        sat = true;
                        break;
                    }
                if (! sat) {
                    all = false;
                    break;
                }
            }
            if (all)
                return true;
        }
        return false;
    }

    inline auto random_clause(std::mt19937_64 & rng, std::uint32_t vars, std::size_t width, int max_positive) -> Clause
    {
        std::vector<std::uint32_t> pool(vars);
        std::iota(pool.begin(), pool.end(), 1);
        std::shuffle(pool.begin(), pool.end(), rng);
        width = std::min<std::size_t>(width, vars);
        std::vector<Literal> lits;
        int positives = 0;
        for (std::size_t i = 0; i < width; ++i) {
            bool positive = std::bernoulli_distribution(0.5)(rng) && positives < max_positive;
            positives += positive;
            lits.push_back(Literal{ pool[i], positive });
        }
        return Clause{ lits };
    }

    // Horn clauses of width 1..3, biased towards the satisfiability threshold.
    inline auto random_horn(std::mt19937_64 & rng, std::uint32_t vars, std::size_t clauses) -> CnfFormula
    {
        CnfFormula f;
        f.num_vars = vars;
        std::uniform_int_distribution<std::size_t> width(1, 3);
        for (std::size_t i = 0; i < clauses; ++i)
            f.add(random_clause(rng, vars, width(rng), 1));
        return f;
    }

    inline auto random_kcnf(std::mt19937_64 & rng, std::uint32_t vars, std::size_t clauses, std::size_t max_width) -> CnfFormula
    {
        CnfFormula f;
        f.num_vars = vars;
        std::uniform_int_distribution<std::size_t> width(1, max_width);
        for (std::size_t i = 0; i < clauses; ++i)
            f.add(random_clause(rng, vars, width(rng), static_cast<int>(max_width)));
        return f;
    }

    // Breadth-first search over the arcs of relation "E".
    inline auto reach(const pclab::ColoredGraph & g, std::uint32_t s, std::uint32_t t) -> bool
    {
        std::vector<std::vector<std::uint32_t>> adj(g.size());
        if (auto e = g.find_relation("E"))
            for (auto [u, v] : g.relations()[*e].edges)
                adj[u].push_back(v);
        std::vector<char> seen(g.size(), 0);
        std::queue<std::uint32_t> todo;
        todo.push(s);
        seen[s] = 1;
        while (! todo.empty()) {
            auto u = todo.front();
            todo.pop();
            if (u == t)
                return true;
            for (auto v : adj[u])
                if (! seen[v]) {
                    seen[v] = 1;
                    todo.push(v);
                }
        }
        return false;
    }

    // Edge sets per relation name, as sets of directed pairs.
    inline auto edge_sets(const pclab::ColoredGraph & g) -> std::map<std::string, std::set<std::pair<std::uint32_t, std::uint32_t>>>
    {
        std::map<std::string, std::set<std::pair<std::uint32_t, std::uint32_t>>> out;
        for (auto & r : g.relations())
            if (! r.edges.empty())
                out[r.name].insert(r.edges.begin(), r.edges.end());
        return out;
    }

    // Every permutation; fine up to about 9 vertices.
    inline auto isomorphic(const pclab::ColoredGraph & g, const pclab::ColoredGraph & h) -> bool
    {
        if (g.size() != h.size())
            return false;
        auto eg = edge_sets(g), eh = edge_sets(h);
        if (eg.size() != eh.size())
            return false;
        for (auto & [name, edges] : eg)
            if (! eh.contains(name) || eh[name].size() != edges.size())
                return false;
        std::vector<std::uint32_t> perm(g.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ok = true;
            for (std::uint32_t v = 0; v < g.size() && ok; ++v)
                ok = g.color(v) == h.color(perm[v]);
            for (auto & [name, edges] : eg) {
                if (! ok)
                    break;
                for (auto [u, v] : edges)
                    if (! eh[name].contains({ perm[u], perm[v] })) {
                        ok = false;
                        break;
                    }
            }
            if (ok)
                return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    }

    // Every map from A's universe into T's.
    inline auto homomorphic(const pclab::RelStructure & a, const pclab::RelStructure & t) -> bool
    {
        std::vector<std::uint32_t> map(a.n, 0);
        if (a.n > 0 && t.n == 0)
            return false;
        while (true) {
            bool ok = true;
            for (auto & [name, rel] : a.relations) {
                for (auto & tuple : rel.tuples) {
                    pclab::Tuple image;
                    for (auto x : tuple)
                        image.push_back(map[x]);
                    if (! t.has_relation(name) || ! t.relation(name).contains(image)) {
                        ok = false;
                        break;
                    }
                }
                if (! ok)
                    break;
            }
            if (ok)
                return true;
            std::size_t i = 0;
            while (i < a.n && ++map[i] == t.n)
                map[i++] = 0;
            if (i == a.n)
                return false;
        }
    }

    inline auto random_graph(std::mt19937_64 & rng, std::uint32_t n, double p) -> pclab::ColoredGraph
    {
        pclab::ColoredGraph g{ n };
        g.relation_index("E");
        std::bernoulli_distribution coin(p);
        for (std::uint32_t u = 0; u < n; ++u)
            for (std::uint32_t v = u + 1; v < n; ++v)
                if (coin(rng))
                    g.add_undirected("E", u, v);
        return g;
    }

    // Value of a polynomial at a 0/1 point, computed from its term map.
    inline auto poly_zero_at(const pclab::Polynomial & p, const std::vector<std::uint8_t> & x) -> bool
    {
        auto sum = pclab::Scalar::zero(p.field());
        for (auto & [m, c] : p.terms()) {
            bool on = std::all_of(m.vars().begin(), m.vars().end(), [&] (auto v) { return x[v] != 0; });
            if (on)
                sum += c;
        }
        return sum.is_zero();
    }

    inline auto has_boolean_zero(const pclab::PolySystem & s) -> bool
    {
        std::vector<std::uint8_t> x(s.num_vars + 1, 0);
        for (std::uint64_t bits = 0; bits < (std::uint64_t{ 1 } << s.num_vars); ++bits) {
            for (std::uint32_t v = 1; v <= s.num_vars; ++v)
                x[v] = (bits >> (v - 1)) & 1;
            if (std::all_of(s.axioms.begin(), s.axioms.end(), [&] (auto & p) { return poly_zero_at(p, x); }))
                return true;
        }
        return false;
    }

    // Dense rational matrices with plain mpq elimination.
    using QMatrix = std::vector<std::vector<mpq_class>>;

    inline auto rank(QMatrix m) -> std::size_t
    {
        std::size_t r = 0;
        std::size_t cols = m.empty() ? 0 : m[0].size();
        for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
            std::size_t pivot = r;
            while (pivot < m.size() && m[pivot][c] == 0)
                ++pivot;
            if (pivot == m.size())
                continue;
            std::swap(m[pivot], m[r]);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (i != r && m[i][c] != 0) {
                    mpq_class f = m[i][c] / m[r][c];
                    for (std::size_t j = c; j < cols; ++j)
                        m[i][j] -= f * m[r][j];
                }
            ++r;
        }
        return r;
    }

    // M x = b solvable iff appending b keeps the rank.
    inline auto solvable(const QMatrix & m, const std::vector<mpq_class> & b) -> bool
    {
        QMatrix aug = m;
        for (std::size_t i = 0; i < aug.size(); ++i)
            aug[i].push_back(b[i]);
        return rank(m) == rank(aug);
    }

    // Small first-order formulas with least fixed points, evaluated with dense stage tables.
    struct Fm
    {
        enum Kind { atom, neg_atom, eq, neq, fix, conj, disj, exists, forall, lfp } kind;
        std::string rel;
        std::vector<std::string> args;     // atoms; lfp application arguments
        std::vector<std::string> tuple;    // lfp variables, or the quantified variable
        std::vector<std::shared_ptr<Fm>> kids;

        auto sexp() const -> std::string
        {
            auto list = [] (const std::vector<std::string> & xs) {
                std::string out;
                for (auto & x : xs)
                    out += " " + x;
                return out;
            };
            switch (kind) {
                case atom: return "(" + rel + list(args) + ")";
                case neg_atom: return "(not (" + rel + list(args) + "))";
                case eq: return "(= " + args[0] + " " + args[1] + ")";
                case neq: return "(not (= " + args[0] + " " + args[1] + "))";
                case fix: return "(" + rel + list(args) + ")";
                case conj: return "(and " + kids[0]->sexp() + " " + kids[1]->sexp() + ")";
                case disj: return "(or " + kids[0]->sexp() + " " + kids[1]->sexp() + ")";
                case exists: return "(exists " + tuple[0] + " " + kids[0]->sexp() + ")";
                case forall: return "(forall " + tuple[0] + " " + kids[0]->sexp() + ")";
                case lfp: {
                    std::string vars;
                    for (auto & v : tuple)
                        vars += (vars.empty() ? "" : " ") + v;
                    return "(lfp " + rel + " (" + vars + ") " + kids[0]->sexp() + list(args) + ")";
                }
            }
            return {};
        }
    };

    using FmPtr = std::shared_ptr<Fm>;

    class StageEvaluator
    {
        public:
            explicit StageEvaluator(const pclab::RelStructure & a) : _a(a) {}

            auto holds(const Fm & f, std::map<std::string, std::uint32_t> env) -> bool
            {
                return eval(f, env);
            }

        private:
            const pclab::RelStructure & _a;
            // Current stage of each fixpoint relation in scope: a bitmap over n^arity tuples.
            std::map<std::string, std::vector<char>> _stage;

            auto value(const std::string & t, const std::map<std::string, std::uint32_t> & env) const -> std::uint32_t
            {
                if (auto it = env.find(t); it != env.end())
                    return it->second;
                return static_cast<std::uint32_t>(std::stoul(t));
            }

            auto code(const std::vector<std::string> & args, const std::map<std::string, std::uint32_t> & env) const -> std::size_t
            {
                std::size_t c = 0;
                for (auto & t : args)
                    c = c * _a.n + value(t, env);
                return c;
            }

            auto eval(const Fm & f, std::map<std::string, std::uint32_t> & env) -> bool
            {
                switch (f.kind) {
                    case Fm::atom:
                    case Fm::neg_atom: {
                        pclab::Tuple t;
                        for (auto & x : f.args)
                            t.push_back(value(x, env));
                        bool in = _a.relation(f.rel).contains(t);
                        return f.kind == Fm::atom ? in : ! in;
                    }
                    case Fm::eq: return value(f.args[0], env) == value(f.args[1], env);
                    case Fm::neq: return value(f.args[0], env) != value(f.args[1], env);
                    case Fm::fix: return _stage.at(f.rel)[code(f.args, env)] != 0;
                    case Fm::conj: return eval(*f.kids[0], env) && eval(*f.kids[1], env);
                    case Fm::disj: return eval(*f.kids[0], env) || eval(*f.kids[1], env);
                    case Fm::exists:
                    case Fm::forall: {
                        auto saved = env.find(f.tuple[0]) != env.end() ? std::optional(env[f.tuple[0]]) : std::nullopt;
                        bool any = false, all = true;
                        for (std::uint32_t x = 0; x < _a.n; ++x) {
                            env[f.tuple[0]] = x;
                            bool r = eval(*f.kids[0], env);
                            any = any || r;
                            all = all && r;
                        }
                        if (saved)
                            env[f.tuple[0]] = *saved;
                        else
                            env.erase(f.tuple[0]);
                        return f.kind == Fm::exists ? any : all;
                    }
                    case Fm::lfp: {
                        std::size_t arity = f.tuple.size(), total = 1;
                        for (std::size_t i = 0; i < arity; ++i)
                            total *= _a.n;
                        std::vector<char> stage(total, 0);
                        auto local = env;
                        while (true) {
                            _stage[f.rel] = stage;
                            std::vector<char> next(total, 0);
                            for (std::size_t c = 0; c < total; ++c) {
                                std::size_t rest = c;
                                for (std::size_t i = arity; i-- > 0; ) {
                                    local[f.tuple[i]] = static_cast<std::uint32_t>(rest % _a.n);
                                    rest /= _a.n;
                                }
                                next[c] = eval(*f.kids[0], local) ? 1 : 0;
                            }
                            if (next == stage)
                                break;
                            stage = std::move(next);
                        }
                        _stage.erase(f.rel);
                        return stage[code(f.args, env)] != 0;
                    }
                }
                return false;
            }
    };

    // Random posLFP sentences over {P/1, E/2} with at most one lfp binder. Bodies mention the
    // fixpoint relation positively; every variable is bound.
    class FormulaGenerator
    {
        public:
            FormulaGenerator(std::mt19937_64 & rng, std::uint32_t n, bool allow_forall) : _rng(rng), _n(n), _forall(allow_forall) {}

            // Half of the sentences are an lfp application at the root.
            auto sentence() -> FmPtr
            {
                _used_lfp = false;
                return pick(2) ? fixpoint(3, {}, {}) : gen(3, {}, {});
            }

        private:
            std::mt19937_64 & _rng;
            std::uint32_t _n;
            bool _forall;
            bool _used_lfp = false;
            int _fresh = 0;

            auto pick(std::size_t k) -> std::size_t { return std::uniform_int_distribution<std::size_t>(0, k - 1)(_rng); }

            auto term(const std::vector<std::string> & vars) -> std::string
            {
                if (vars.empty() || pick(5) == 0)
                    return std::to_string(pick(_n));
                return vars[pick(vars.size())];
            }

            struct FixScope
            {
                std::string rel;
                std::size_t arity;
            };

            auto leaf(const std::vector<std::string> & vars, const std::vector<FixScope> & fix) -> FmPtr
            {
                auto f = std::make_shared<Fm>();
                std::size_t choice = pick(fix.empty() ? 6 : 9);
                if (choice >= 6) {
                    f->kind = Fm::fix;
                    f->rel = fix[0].rel;
                    for (std::size_t i = 0; i < fix[0].arity; ++i)
                        f->args.push_back(term(vars));
                    return f;
                }
                switch (choice) {
                    case 0: f->kind = Fm::atom; f->rel = "P"; f->args = { term(vars) }; break;
                    case 1: f->kind = Fm::neg_atom; f->rel = "P"; f->args = { term(vars) }; break;
                    case 2: case 3: f->kind = Fm::atom; f->rel = "E"; f->args = { term(vars), term(vars) }; break;
                    case 4: f->kind = Fm::eq; f->args = { term(vars), term(vars) }; break;
                    default: f->kind = Fm::neq; f->args = { term(vars), term(vars) }; break;
                }
                return f;
            }

            auto gen(int depth, std::vector<std::string> vars, std::vector<FixScope> fix) -> FmPtr
            {
                if (depth == 0)
                    return leaf(vars, fix);
                std::size_t choice = pick(_used_lfp ? 5 : 6);
                auto f = std::make_shared<Fm>();
                switch (choice) {
                    case 0:
                        return leaf(vars, fix);
                    case 1: case 2:
                        f->kind = choice == 1 ? Fm::conj : Fm::disj;
                        f->kids = { gen(depth - 1, vars, fix), gen(depth - 1, vars, fix) };
                        return f;
                    case 3: case 4: {
                        f->kind = (choice == 4 && _forall) ? Fm::forall : Fm::exists;
                        std::string v = "v" + std::to_string(_fresh++);
                        f->tuple = { v };
                        vars.push_back(v);
                        f->kids = { gen(depth - 1, vars, fix) };
                        return f;
                    }
                    default:
                        return fixpoint(depth, vars, fix);
                }
            }

            // exists y (psi and R(y, ...)): a step that moves the fixpoint to a new element.
            auto step(int depth, std::vector<std::string> vars, const FixScope & fix) -> FmPtr
            {
                std::string y = "v" + std::to_string(_fresh++);
                vars.push_back(y);
                auto atom = std::make_shared<Fm>();
                atom->kind = Fm::fix;
                atom->rel = fix.rel;
                atom->args.push_back(y);
                for (std::size_t i = 1; i < fix.arity; ++i)
                    atom->args.push_back(term(vars));
                auto both = std::make_shared<Fm>();
                both->kind = Fm::conj;
                both->kids = { gen(std::max(depth - 2, 0), vars, {}), atom };
                auto f = std::make_shared<Fm>();
                f->kind = Fm::exists;
                f->tuple = { y };
                f->kids = { both };
                return f;
            }

            auto fixpoint(int depth, std::vector<std::string> vars, std::vector<FixScope> fix) -> FmPtr
            {
                _used_lfp = true;
                auto f = std::make_shared<Fm>();
                f->kind = Fm::lfp;
                f->rel = "R";
                std::size_t arity = 1 + pick(2);
                auto inner = vars;
                for (std::size_t i = 0; i < arity; ++i) {
                    std::string v = "x" + std::to_string(_fresh++);
                    f->tuple.push_back(v);
                    inner.push_back(v);
                }
                fix.push_back({ "R", arity });
                // A base case or a recursive step, so the fixpoint is nontrivial.
                auto body = std::make_shared<Fm>();
                body->kind = Fm::disj;
                body->kids = { gen(depth - 1, inner, {}), pick(2) ? step(depth, inner, fix.back()) : gen(depth, inner, fix) };
                f->kids = { body };
                for (std::size_t i = 0; i < arity; ++i)
                    f->args.push_back(term(vars));
                return f;
            }
    };

    inline auto random_structure(std::mt19937_64 & rng, std::uint32_t n) -> pclab::RelStructure
    {
        pclab::RelStructure a;
        a.n = n;
        a.add_relation("P", 1);
        a.add_relation("E", 2);
        std::bernoulli_distribution coin(0.4);
        for (std::uint32_t x = 0; x < n; ++x) {
            if (coin(rng))
                a.add_tuple("P", { x });
            for (std::uint32_t y = 0; y < n; ++y)
                if (coin(rng))
                    a.add_tuple("E", { x, y });
        }
        return a;
    }
}
