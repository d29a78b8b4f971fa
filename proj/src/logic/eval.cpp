#include <pclab/logic/formula.hpp>
#include <pclab/errors.hpp>

#include <set>

using std::size_t;
using std::string;
using std::uint32_t;
using std::vector;

namespace pclab
{
    namespace
    {
        // Direct recursive semantics; each lfp is iterated from the empty relation in the current environment.
        class Evaluator
        {
            public:
                Evaluator(const RelStructure & a, const LfpFormula & f) : _a(a), _f(f), _env(f.num_vars(), 0) {}

                auto eval(size_t id) -> bool
                {
                    const auto & n = _f.node(id);
                    switch (n.kind) {
                        case NodeKind::truth:
                            return ! n.negated;
                        case NodeKind::input_atom:
                            return _a.relation(n.relation).contains(instantiate(n.args)) != n.negated;
                        case NodeKind::equality:
                            return (value(n.args[0]) == value(n.args[1])) != n.negated;
                        case NodeKind::fix_atom:
                            return _fix.at(n.relation).contains(instantiate(n.args));
                        case NodeKind::conj:
                            return eval(n.children[0]) && eval(n.children[1]);
                        case NodeKind::disj:
                            return eval(n.children[0]) || eval(n.children[1]);
                        case NodeKind::exists:
                        case NodeKind::forall: {
                            bool want = n.kind == NodeKind::exists;
                            uint32_t saved = _env[n.bound[0]];
                            bool result = ! want;
                            for (uint32_t a = 0; a < _a.n && result != want; ++a) {
                                _env[n.bound[0]] = a;
                                if (eval(n.children[0]) == want)
                                    result = want;
                            }
                            _env[n.bound[0]] = saved;
                            return result;
                        }
                        case NodeKind::lfp:
                            return fixpoint(n).contains(instantiate(n.args));
                    }
                    return false;
                }

            private:
                const RelStructure & _a;
                const LfpFormula & _f;
                vector<uint32_t> _env;
                std::map<string, std::set<Tuple>> _fix;

                auto value(const Term & t) const -> uint32_t
                {
                    return t.is_var ? _env[t.value] : t.value;
                }

                auto instantiate(const vector<Term> & args) const -> Tuple
                {
                    Tuple t;
                    t.reserve(args.size());
                    for (auto & a : args)
                        t.push_back(value(a));
                    return t;
                }

                auto fixpoint(const FormulaNode & n) -> std::set<Tuple>
                {
                    size_t k = n.bound.size();
                    vector<uint32_t> saved;
                    for (auto v : n.bound)
                        saved.push_back(_env[v]);

                    std::set<Tuple> stage;
                    while (true) {
                        _fix[n.relation] = stage;
                        std::set<Tuple> next;
                        Tuple t(k, 0);
                        bool more = _a.n > 0 || k == 0;
                        while (more) {
                            for (size_t i = 0; i < k; ++i)
                                _env[n.bound[i]] = t[i];
                            if (eval(n.children[0]))
                                next.insert(t);
                            more = false;
                            for (size_t i = k; i-- > 0; ) {
                                if (++t[i] < _a.n) {
                                    more = true;
                                    break;
                                }
                                t[i] = 0;
                            }
                        }
                        if (next == stage)
                            break;
                        stage = std::move(next);
                    }
                    _fix.erase(n.relation);
                    for (size_t i = 0; i < k; ++i)
                        _env[n.bound[i]] = saved[i];
                    return stage;
                }
        };
    }

    auto eval_poslfp(const RelStructure & a, const LfpFormula & phi) -> bool
    {
        a.validate();
        phi.check_against(a);
        Evaluator e{ a, phi };
        return e.eval(phi.root());
    }
}
