#include <pclab/logic/formula.hpp>
#include <pclab/errors.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

using std::size_t;
using std::string;
using std::uint32_t;
using std::vector;

namespace pclab
{
    namespace
    {
        struct Sexp
        {
            bool is_list = false;
            string atom;
            vector<Sexp> items;
        };

        auto tokenize(const string & text) -> vector<string>
        {
            vector<string> tokens;
            size_t i = 0;
            while (i < text.size()) {
                char c = text[i];
                if (c == ';') {
                    while (i < text.size() && text[i] != '\n')
                        ++i;
                }
                else if (std::isspace(static_cast<unsigned char>(c)))
                    ++i;
                else if (c == '(' || c == ')') {
                    tokens.emplace_back(1, c);
                    ++i;
                }
                else {
                    size_t j = i;
                    while (j < text.size() && text[j] != '(' && text[j] != ')' && text[j] != ';'
                            && ! std::isspace(static_cast<unsigned char>(text[j])))
                        ++j;
                    tokens.push_back(text.substr(i, j - i));
                    i = j;
                }
            }
            return tokens;
        }

        auto read_sexp(const vector<string> & tokens, size_t & pos) -> Sexp
        {
            if (pos >= tokens.size())
                throw UsageError("formula ends too early");
            const string & t = tokens[pos++];
            if (t == ")")
                throw UsageError("unexpected ')' in formula");
            if (t != "(")
                return Sexp{ false, t, {} };
            Sexp list{ true, "", {} };
            while (true) {
                if (pos >= tokens.size())
                    throw UsageError("unbalanced '(' in formula");
                if (tokens[pos] == ")") {
                    ++pos;
                    return list;
                }
                list.items.push_back(read_sexp(tokens, pos));
            }
        }

        auto show(const Sexp & s) -> string
        {
            if (! s.is_list)
                return s.atom;
            string out = "(";
            for (size_t i = 0; i < s.items.size(); ++i)
                out += (i ? " " : "") + show(s.items[i]);
            return out + ")";
        }

        auto is_number(const string & s) -> bool
        {
            return ! s.empty() && std::all_of(s.begin(), s.end(), [] (char c) { return std::isdigit(static_cast<unsigned char>(c)); });
        }

        auto merge(vector<uint32_t> & into, const vector<uint32_t> & from) -> void
        {
            vector<uint32_t> out;
            std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
            into = std::move(out);
        }

        auto merge(vector<string> & into, const vector<string> & from) -> void
        {
            vector<string> out;
            std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
            into = std::move(out);
        }
    }

    class FormulaParser
    {
        public:
            FormulaParser(LfpFormula & f, const std::map<string, uint32_t> & constants) : _f(f), _constants(constants) {}

            auto formula(const Sexp & s) -> size_t
            {
                if (! s.is_list) {
                    if (s.atom == "true" || s.atom == "false")
                        return truth(s.atom == "true");
                    throw UsageError("expected a formula, got '" + s.atom + "'");
                }
                if (s.items.empty() || s.items[0].is_list)
                    throw UsageError("expected an operator in " + show(s));
                const string & op = s.items[0].atom;

                if (op == "and" || op == "or") {
                    vector<size_t> parts;
                    for (size_t i = 1; i < s.items.size(); ++i)
                        parts.push_back(formula(s.items[i]));
                    if (parts.empty())
                        return truth(op == "and");
                    // Right-nested binary connectives keep existential clauses at width three.
                    size_t acc = parts.back();
                    for (size_t i = parts.size() - 1; i-- > 0; ) {
                        FormulaNode n;
                        n.kind = op == "and" ? NodeKind::conj : NodeKind::disj;
                        n.children = { parts[i], acc };
                        acc = intern(std::move(n));
                    }
                    return acc;
                }
                if (op == "not") {
                    if (s.items.size() != 2)
                        throw UsageError("'not' takes one argument in " + show(s));
                    size_t inner = formula(s.items[1]);
                    FormulaNode n = _f._nodes[inner];
                    if (n.kind != NodeKind::input_atom && n.kind != NodeKind::equality && n.kind != NodeKind::truth)
                        throw UsageError("negation is only allowed on input atoms: " + show(s));
                    n.negated = ! n.negated;
                    return intern(std::move(n));
                }
                if (op == "exists" || op == "forall") {
                    if (s.items.size() != 3)
                        throw UsageError("'" + op + "' takes a variable and a body in " + show(s));
                    vector<string> names = variable_list(s.items[1]);
                    for (auto & name : names)
                        bind(name);
                    size_t body = formula(s.items[2]);
                    for (size_t i = names.size(); i-- > 0; ) {
                        unbind(names[i]);
                        FormulaNode n;
                        n.kind = op == "exists" ? NodeKind::exists : NodeKind::forall;
                        n.bound = { var_id(names[i]) };
                        n.children = { body };
                        body = intern(std::move(n));
                    }
                    return body;
                }
                if (op == "=") {
                    if (s.items.size() != 3)
                        throw UsageError("'=' takes two terms in " + show(s));
                    FormulaNode n;
                    n.kind = NodeKind::equality;
                    n.args = { term(s.items[1]), term(s.items[2]) };
                    return intern(std::move(n));
                }
                if (op == "lfp") {
                    if (s.items.size() < 4 || s.items[1].is_list)
                        throw UsageError("expected (lfp R (x ...) body args...) in " + show(s));
                    const string & rel = s.items[1].atom;
                    if (_f._binders.contains(rel) || _pending.contains(rel))
                        throw UsageError("fixpoint relation " + rel + " is bound more than once");
                    if (! s.items[2].is_list)
                        throw UsageError("lfp needs a parenthesised variable tuple in " + show(s));
                    vector<string> names = variable_list(s.items[2]);
                    vector<uint32_t> tuple;
                    for (auto & name : names) {
                        bind(name);
                        tuple.push_back(var_id(name));
                    }
                    _fix_scope[rel] = names.size();
                    _pending.insert(rel);
                    size_t body = formula(s.items[3]);
                    _fix_scope.erase(rel);
                    for (auto & name : names)
                        unbind(name);

                    FormulaNode n;
                    n.kind = NodeKind::lfp;
                    n.relation = rel;
                    n.bound = tuple;
                    n.children = { body };
                    if (s.items.size() == 4) {
                        for (auto & name : names)
                            n.args.push_back(term(Sexp{ false, name, {} }));
                    }
                    else {
                        if (s.items.size() - 4 != names.size())
                            throw UsageError("lfp " + rel + " applied to the wrong number of arguments");
                        for (size_t i = 4; i < s.items.size(); ++i)
                            n.args.push_back(term(s.items[i]));
                    }
                    size_t id = intern(std::move(n));
                    _f._binders[rel] = id;
                    return id;
                }

                // Atom: fixpoint relation in scope, or an input relation.
                FormulaNode n;
                n.relation = op;
                for (size_t i = 1; i < s.items.size(); ++i)
                    n.args.push_back(term(s.items[i]));
                if (auto it = _fix_scope.find(op); it != _fix_scope.end()) {
                    if (it->second != n.args.size())
                        throw UsageError("fixpoint relation " + op + " used with the wrong arity in " + show(s));
                    n.kind = NodeKind::fix_atom;
                }
                else {
                    if (op == "gfp")
                        throw UsageError("unsupported operator " + op);
                    n.kind = NodeKind::input_atom;
                }
                return intern(std::move(n));
            }

            auto finish(size_t root) -> void
            {
                _f._root = root;
                auto & nodes = _f._nodes;
                // Parameters of nested fixpoints propagate through free fixpoint relations; iterate to stability.
                for (auto & n : nodes)
                    n.key_vars = n.free_vars;
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (auto & [rel, id] : _f._binders) {
                        vector<uint32_t> params;
                        const auto & body = nodes[nodes[id].children[0]];
                        const auto & tuple = nodes[id].bound;
                        for (auto v : body.key_vars)
                            if (std::find(tuple.begin(), tuple.end(), v) == tuple.end())
                                params.push_back(v);
                        auto & slot = _f._params[rel];
                        if (slot != params) {
                            slot = params;
                            changed = true;
                        }
                    }
                    for (auto & n : nodes) {
                        vector<uint32_t> key = n.free_vars;
                        for (auto & rel : n.free_fix)
                            merge(key, _f._params[rel]);
                        if (key != n.key_vars) {
                            n.key_vars = std::move(key);
                            changed = true;
                        }
                    }
                }
            }

        private:
            LfpFormula & _f;
            const std::map<string, uint32_t> & _constants;
            std::unordered_map<string, size_t> _interned;
            std::map<string, uint32_t> _var_ids;
            std::set<string> _in_scope;
            std::map<string, size_t> _fix_scope;
            std::set<string> _pending;

            auto truth(bool value) -> size_t
            {
                FormulaNode n;
                n.kind = NodeKind::truth;
                n.negated = ! value;
                return intern(std::move(n));
            }

            auto var_id(const string & name) -> uint32_t
            {
                auto [it, fresh] = _var_ids.try_emplace(name, static_cast<uint32_t>(_f._var_names.size()));
                if (fresh)
                    _f._var_names.push_back(name);
                return it->second;
            }

            auto bind(const string & name) -> void
            {
                if (_constants.contains(name) || is_number(name))
                    throw UsageError("'" + name + "' is a constant and cannot be bound");
                if (_in_scope.contains(name))
                    throw UsageError("variable " + name + " is rebound inside its own scope");
                _in_scope.insert(name);
                var_id(name);
            }

            auto unbind(const string & name) -> void
            {
                _in_scope.erase(name);
            }

            auto variable_list(const Sexp & s) -> vector<string>
            {
                vector<string> names;
                if (! s.is_list)
                    names.push_back(s.atom);
                else
                    for (auto & item : s.items) {
                        if (item.is_list)
                            throw UsageError("expected a variable name, got " + show(item));
                        names.push_back(item.atom);
                    }
                if (names.empty())
                    throw UsageError("empty variable list");
                return names;
            }

            auto term(const Sexp & s) -> Term
            {
                if (s.is_list)
                    throw UsageError("expected a term, got " + show(s));
                if (_in_scope.contains(s.atom))
                    return Term{ true, _var_ids.at(s.atom) };
                if (auto it = _constants.find(s.atom); it != _constants.end())
                    return Term{ false, it->second };
                if (is_number(s.atom))
                    return Term{ false, static_cast<uint32_t>(std::stoul(s.atom)) };
                throw UsageError("free variable " + s.atom + " (formulas must be sentences)");
            }

            auto intern(FormulaNode n) -> size_t
            {
                string key = std::to_string(static_cast<int>(n.kind)) + (n.negated ? "!" : "") + "|" + n.relation + "|";
                for (auto & t : n.args)
                    key += (t.is_var ? "v" : "c") + std::to_string(t.value) + ",";
                key += "|";
                for (auto b : n.bound)
                    key += std::to_string(b) + ",";
                key += "|";
                for (auto c : n.children)
                    key += std::to_string(c) + ",";
                if (auto it = _interned.find(key); it != _interned.end())
                    return it->second;

                auto & nodes = _f._nodes;
                vector<uint32_t> vars;
                for (auto & t : n.args)
                    if (t.is_var)
                        vars.push_back(t.value);
                std::sort(vars.begin(), vars.end());
                vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
                switch (n.kind) {
                    case NodeKind::truth:
                    case NodeKind::input_atom:
                    case NodeKind::equality:
                        n.free_vars = vars;
                        break;
                    case NodeKind::fix_atom:
                        n.free_vars = vars;
                        n.free_fix = { n.relation };
                        break;
                    case NodeKind::conj:
                    case NodeKind::disj:
                        for (auto c : n.children) {
                            merge(n.free_vars, nodes[c].free_vars);
                            merge(n.free_fix, nodes[c].free_fix);
                        }
                        break;
                    case NodeKind::exists:
                    case NodeKind::forall:
                        n.free_vars = nodes[n.children[0]].free_vars;
                        std::erase(n.free_vars, n.bound[0]);
                        n.free_fix = nodes[n.children[0]].free_fix;
                        break;
                    case NodeKind::lfp:
                        n.free_vars = nodes[n.children[0]].free_vars;
                        for (auto b : n.bound)
                            std::erase(n.free_vars, b);
                        merge(n.free_vars, vars);
                        n.free_fix = nodes[n.children[0]].free_fix;
                        std::erase(n.free_fix, n.relation);
                        break;
                }
                nodes.push_back(std::move(n));
                _interned.emplace(std::move(key), nodes.size() - 1);
                return nodes.size() - 1;
            }
    };

    auto LfpFormula::parse(const string & text, const std::map<string, uint32_t> & constants) -> LfpFormula
    {
        auto tokens = tokenize(text);
        if (tokens.empty())
            throw UsageError("empty formula");
        size_t pos = 0;
        Sexp s = read_sexp(tokens, pos);
        if (pos != tokens.size())
            throw UsageError("trailing input after formula");

        LfpFormula f;
        FormulaParser parser{ f, constants };
        size_t root = parser.formula(s);
        parser.finish(root);
        return f;
    }

    auto LfpFormula::binder(const string & relation) const -> size_t
    {
        auto it = _binders.find(relation);
        if (it == _binders.end())
            throw UsageError("no lfp binds " + relation);
        return it->second;
    }

    auto LfpFormula::parameters(const string & relation) const -> const vector<uint32_t> &
    {
        auto it = _params.find(relation);
        if (it == _params.end())
            throw UsageError("no lfp binds " + relation);
        return it->second;
    }

    auto LfpFormula::is_efp0() const -> bool
    {
        return std::none_of(_nodes.begin(), _nodes.end(), [] (const FormulaNode & n) { return n.kind == NodeKind::forall; });
    }

    auto LfpFormula::max_constant() const -> std::int64_t
    {
        std::int64_t m = -1;
        for (auto & n : _nodes)
            for (auto & t : n.args)
                if (! t.is_var)
                    m = std::max<std::int64_t>(m, t.value);
        return m;
    }

    auto LfpFormula::vocabulary() const -> std::map<string, size_t>
    {
        std::map<string, size_t> vocab;
        for (auto & n : _nodes)
            if (n.kind == NodeKind::input_atom) {
                auto [it, fresh] = vocab.try_emplace(n.relation, n.args.size());
                if (! fresh && it->second != n.args.size())
                    throw UsageError("relation " + n.relation + " used with two different arities");
            }
        return vocab;
    }

    auto LfpFormula::check_against(const RelStructure & a) const -> void
    {
        for (auto & [name, arity] : vocabulary()) {
            if (! a.has_relation(name))
                throw UsageError("structure has no relation named " + name);
            if (a.relation(name).arity != arity)
                throw UsageError("relation " + name + " has arity " + std::to_string(a.relation(name).arity)
                        + " in the structure but " + std::to_string(arity) + " in the formula");
        }
        if (max_constant() >= std::int64_t(a.n))
            throw UsageError("formula mentions element " + std::to_string(max_constant()) + " outside the universe");
    }

    auto LfpFormula::to_string(size_t node) const -> string
    {
        const auto & n = _nodes[node];
        auto term = [&] (const Term & t) { return t.is_var ? _var_names[t.value] : std::to_string(t.value); };
        auto atom = [&] (const string & head) {
            string s = "(" + head;
            for (auto & t : n.args)
                s += " " + term(t);
            return s + ")";
        };
        switch (n.kind) {
            case NodeKind::truth:
                return n.negated ? "false" : "true";
            case NodeKind::input_atom:
                return n.negated ? "(not " + atom(n.relation) + ")" : atom(n.relation);
            case NodeKind::equality:
                return n.negated ? "(not " + atom("=") + ")" : atom("=");
            case NodeKind::fix_atom:
                return atom(n.relation);
            case NodeKind::conj:
            case NodeKind::disj:
                return string{ n.kind == NodeKind::conj ? "(and " : "(or " } + to_string(n.children[0]) + " " + to_string(n.children[1]) + ")";
            case NodeKind::exists:
            case NodeKind::forall:
                return string{ n.kind == NodeKind::exists ? "(exists " : "(forall " } + _var_names[n.bound[0]] + " " + to_string(n.children[0]) + ")";
            case NodeKind::lfp: {
                string s = "(lfp " + n.relation + " (";
                for (size_t i = 0; i < n.bound.size(); ++i)
                    s += (i ? " " : "") + _var_names[n.bound[i]];
                s += ") " + to_string(n.children[0]);
                for (auto & t : n.args)
                    s += " " + term(t);
                return s + ")";
            }
        }
        return "";
    }
}
