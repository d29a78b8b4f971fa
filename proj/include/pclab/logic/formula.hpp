#pragma once

#include <pclab/logic/structure.hpp>
#include <pclab/resolution/cnf.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pclab
{
    enum class NodeKind
    {
        truth,
        input_atom,
        equality,
        fix_atom,
        conj,
        disj,
        exists,
        forall,
        lfp
    };

    struct Term
    {
        bool is_var = false;
        // Variable id or universe element.
        std::uint32_t value = 0;

        friend auto operator<=> (const Term &, const Term &) = default;
    };

    struct FormulaNode
    {
        NodeKind kind = NodeKind::truth;
        // truth: value is !negated. input_atom, equality: negated literal.
        bool negated = false;
        // Input relation, fixpoint relation, or the relation bound by lfp.
        std::string relation;
        // Atom arguments, or the arguments an lfp is applied to.
        std::vector<Term> args;
        // Quantified variable (one entry) or the lfp tuple x̄.
        std::vector<std::uint32_t> bound;
        std::vector<std::size_t> children;

        // Free first-order variables, sorted.
        std::vector<std::uint32_t> free_vars;
        // Fixpoint relations occurring free (bound by an enclosing lfp).
        std::vector<std::string> free_fix;
        // Variables an instance depends on: free_vars plus the parameters of every free fixpoint relation.
        std::vector<std::uint32_t> key_vars;
    };

    // A posLFP sentence. Structurally equal subformulas share one node.
    class LfpFormula
    {
        public:
            // S-expression syntax, see the README. Symbols in `constants` name universe elements;
            // bare integers are elements too.
            static auto parse(const std::string & text, const std::map<std::string, std::uint32_t> & constants = {}) -> LfpFormula;

            auto nodes() const -> const std::vector<FormulaNode> & { return _nodes; }
            auto node(std::size_t i) const -> const FormulaNode & { return _nodes[i]; }
            auto root() const -> std::size_t { return _root; }
            auto num_vars() const -> std::uint32_t { return static_cast<std::uint32_t>(_var_names.size()); }
            auto var_name(std::uint32_t v) const -> const std::string & { return _var_names[v]; }

            // The lfp node binding a fixpoint relation.
            auto binder(const std::string & relation) const -> std::size_t;
            // First-order variables free in the body of an lfp other than its tuple x̄.
            auto parameters(const std::string & relation) const -> const std::vector<std::uint32_t> &;

            // No universal quantifier anywhere.
            auto is_efp0() const -> bool;
            auto max_constant() const -> std::int64_t;
            // Input relations with their arities.
            auto vocabulary() const -> std::map<std::string, std::size_t>;
            // Throws UsageError if an input relation is missing or has the wrong arity, or a constant is outside the universe.
            auto check_against(const RelStructure & a) const -> void;

            auto to_string() const -> std::string { return to_string(_root); }
            auto to_string(std::size_t node) const -> std::string;

        private:
            std::vector<FormulaNode> _nodes;
            std::size_t _root = 0;
            std::vector<std::string> _var_names;
            std::map<std::string, std::size_t> _binders;
            std::map<std::string, std::vector<std::uint32_t>> _params;

            friend class FormulaParser;
    };

    auto eval_poslfp(const RelStructure & a, const LfpFormula & phi) -> bool;

    struct HornEncoding
    {
        CnfFormula cnf;
        // names[v - 1] describes the instantiated subformula of variable v.
        std::vector<std::string> names;
        std::map<std::string, std::uint32_t> var_map;
    };

    auto horn_encode(const RelStructure & a, const LfpFormula & phi) -> HornEncoding;
}
