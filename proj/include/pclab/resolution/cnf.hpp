#pragma once

#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace pclab
{
    struct Literal
    {
        std::uint32_t var = 1;
        bool positive = true;

        static auto from_dimacs(long long v) -> Literal;
        auto to_dimacs() const -> long long { return positive ? static_cast<long long>(var) : -static_cast<long long>(var); }
        auto operator~ () const -> Literal { return Literal{ var, ! positive }; }

        // Ordered by variable, negative before positive.
        friend auto operator<=> (const Literal & a, const Literal & b) -> std::strong_ordering
        {
            if (auto c = a.var <=> b.var; c != 0)
                return c;
            return a.positive <=> b.positive;
        }
        friend auto operator== (const Literal &, const Literal &) -> bool = default;
    };

    auto pos(std::uint32_t v) -> Literal;
    auto neg(std::uint32_t v) -> Literal;

    // A set of literals, kept sorted and duplicate free.
    class Clause
    {
        public:
            Clause() = default;
            explicit Clause(std::vector<Literal> literals);
            Clause(std::initializer_list<Literal> literals) : Clause(std::vector<Literal>(literals)) {}
            static auto from_dimacs(const std::vector<long long> & lits) -> Clause;

            auto literals() const -> const std::vector<Literal> & { return _lits; }
            auto width() const -> std::size_t { return _lits.size(); }
            auto empty() const -> bool { return _lits.empty(); }
            auto positive_count() const -> std::size_t;
            auto is_horn() const -> bool { return positive_count() <= 1; }
            auto is_tautology() const -> bool;
            auto contains(Literal l) const -> bool;
            auto max_var() const -> std::uint32_t;
            auto satisfied_by(const std::vector<std::uint8_t> & assignment) const -> bool;
            auto to_string() const -> std::string;

            friend auto operator<=> (const Clause & a, const Clause & b) -> std::strong_ordering;
            friend auto operator== (const Clause &, const Clause &) -> bool = default;

        private:
            std::vector<Literal> _lits;
    };

    // Resolvent of a and b on the variable of `on` (which must be in a, with ~on in b).
    auto resolve(const Clause & a, const Clause & b, Literal on) -> Clause;

    struct ClauseHash
    {
        auto operator() (const Clause & c) const -> std::size_t;
    };

    struct CnfFormula
    {
        std::uint32_t num_vars = 0;
        std::vector<Clause> clauses;

        auto add(Clause c) -> void;
        auto validate() const -> void;
        auto max_width() const -> std::size_t;
        // Sort and drop duplicate clauses (clause-set semantics).
        auto normalize() -> void;
    };

    auto read_dimacs(std::istream & in) -> CnfFormula;
    auto read_dimacs_file(const std::string & path) -> CnfFormula;
    auto write_dimacs(const CnfFormula & f) -> std::string;

    // Exhaustive search; num_vars <= 26. Index 0 of the assignment is unused.
    auto brute_force_model(const CnfFormula & f) -> std::optional<std::vector<std::uint8_t>>;
    auto satisfies(const CnfFormula & f, const std::vector<std::uint8_t> & assignment) -> bool;
}
