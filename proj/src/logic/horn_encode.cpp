#include <pclab/logic/formula.hpp>
#include <pclab/errors.hpp>

#include <deque>

using std::size_t;
using std::string;
using std::uint32_t;
using std::vector;

namespace pclab
{
    namespace
    {
        struct Instance
        {
            size_t node;
            // Values of the node's key variables, in key_vars order.
            vector<uint32_t> values;
        };

        class HornCompiler
        {
            public:
                HornCompiler(const RelStructure & a, const LfpFormula & f) : _a(a), _f(f), _env(f.num_vars(), 0) {}

                auto run() -> HornEncoding
                {
                    uint32_t root = variable(_f.root(), {});
                    while (! _queue.empty()) {
                        Instance inst = std::move(_queue.front());
                        _queue.pop_front();
                        expand(inst);
                    }
                    _out.cnf.add(Clause{ { neg(root) } });
                    _out.cnf.num_vars = static_cast<uint32_t>(_out.names.size());
                    return std::move(_out);
                }

            private:
                const RelStructure & _a;
                const LfpFormula & _f;
                vector<uint32_t> _env;
                std::map<std::pair<size_t, vector<uint32_t>>, uint32_t> _ids;
                std::deque<Instance> _queue;
                HornEncoding _out;

                // Variable for `node` under the current environment, created (and queued) on first use.
                auto variable(size_t node, const vector<std::pair<uint32_t, uint32_t>> & overrides) -> uint32_t
                {
                    for (auto [v, a] : overrides)
                        _env[v] = a;
                    const auto & n = _f.node(node);
                    vector<uint32_t> values;
                    for (auto v : n.key_vars)
                        values.push_back(_env[v]);
                    auto [it, fresh] = _ids.try_emplace({ node, values }, 0);
                    if (fresh) {
                        it->second = static_cast<uint32_t>(_out.names.size() + 1);
                        string name = _f.to_string(node);
                        if (! values.empty()) {
                            name += " @";
                            for (size_t i = 0; i < values.size(); ++i)
                                name += " " + _f.var_name(n.key_vars[i]) + "=" + std::to_string(values[i]);
                        }
                        _out.var_map.emplace(name, it->second);
                        _out.names.push_back(std::move(name));
                        _queue.push_back(Instance{ node, std::move(values) });
                    }
                    return it->second;
                }

                auto load(const Instance & inst) -> void
                {
                    const auto & keys = _f.node(inst.node).key_vars;
                    for (size_t i = 0; i < keys.size(); ++i)
                        _env[keys[i]] = inst.values[i];
                }

                auto value(const Term & t) const -> uint32_t
                {
                    return t.is_var ? _env[t.value] : t.value;
                }

                auto instantiate(const vector<Term> & args) const -> Tuple
                {
                    Tuple t;
                    for (auto & a : args)
                        t.push_back(value(a));
                    return t;
                }

                auto implies(uint32_t premise, uint32_t conclusion) -> void
                {
                    _out.cnf.add(Clause{ { neg(premise), pos(conclusion) } });
                }

                // X_{body(x̄ := args)} -> x, rule (6) for both lfp applications and fixpoint atoms.
                auto unfold(size_t binder, const Tuple & args, uint32_t x) -> void
                {
                    const auto & b = _f.node(binder);
                    vector<std::pair<uint32_t, uint32_t>> overrides;
                    for (size_t i = 0; i < b.bound.size(); ++i)
                        overrides.emplace_back(b.bound[i], args[i]);
                    implies(variable(b.children[0], overrides), x);
                }

                auto expand(const Instance & inst) -> void
                {
                    const auto & n = _f.node(inst.node);
                    uint32_t x = _ids.at({ inst.node, inst.values });
                    load(inst);
                    switch (n.kind) {
                        case NodeKind::truth:
                        case NodeKind::input_atom:
                        case NodeKind::equality: {
                            bool holds;
                            if (n.kind == NodeKind::truth)
                                holds = ! n.negated;
                            else if (n.kind == NodeKind::equality)
                                holds = (value(n.args[0]) == value(n.args[1])) != n.negated;
                            else
                                holds = _a.relation(n.relation).contains(instantiate(n.args)) != n.negated;
                            _out.cnf.add(Clause{ { holds ? pos(x) : neg(x) } });
                            break;
                        }
                        case NodeKind::disj:
                            for (auto c : n.children) {
                                load(inst);
                                implies(variable(c, {}), x);
                            }
                            break;
                        case NodeKind::conj: {
                            vector<Literal> lits{ pos(x) };
                            for (auto c : n.children) {
                                load(inst);
                                lits.push_back(neg(variable(c, {})));
                            }
                            _out.cnf.add(Clause{ std::move(lits) });
                            break;
                        }
                        case NodeKind::exists:
                            for (uint32_t a = 0; a < _a.n; ++a) {
                                load(inst);
                                implies(variable(n.children[0], { { n.bound[0], a } }), x);
                            }
                            break;
                        case NodeKind::forall: {
                            vector<Literal> lits{ pos(x) };
                            for (uint32_t a = 0; a < _a.n; ++a) {
                                load(inst);
                                lits.push_back(neg(variable(n.children[0], { { n.bound[0], a } })));
                            }
                            _out.cnf.add(Clause{ std::move(lits) });
                            break;
                        }
                        case NodeKind::lfp:
                            unfold(inst.node, instantiate(n.args), x);
                            break;
                        case NodeKind::fix_atom:
                            unfold(_f.binder(n.relation), instantiate(n.args), x);
                            break;
                    }
                }
        };
    }

    auto horn_encode(const RelStructure & a, const LfpFormula & phi) -> HornEncoding
    {
        a.validate();
        phi.check_against(a);
        HornCompiler c{ a, phi };
        return c.run();
    }
}
