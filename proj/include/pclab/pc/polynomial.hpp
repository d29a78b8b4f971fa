#pragma once

#include <pclab/algebra/field.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pclab
{
    using Var = std::uint32_t;

    // Multilinear monomial: strictly increasing variable ids (ids start at 1).
    class Monomial
    {
        public:
            Monomial() = default;
            explicit Monomial(std::vector<Var> vars);
            Monomial(std::initializer_list<Var> vars) : Monomial(std::vector<Var>(vars)) {}

            auto vars() const -> const std::vector<Var> & { return _vars; }
            auto degree() const -> int { return static_cast<int>(_vars.size()); }
            auto contains(Var v) const -> bool;
            auto is_one() const -> bool { return _vars.empty(); }

            // Multilinear product (set union).
            auto operator* (const Monomial & other) const -> Monomial;

            auto to_string() const -> std::string;

            // Graded lexicographic: degree first, then lexicographic on the sorted ids.
            friend auto operator<=> (const Monomial & a, const Monomial & b) -> std::strong_ordering;
            friend auto operator== (const Monomial & a, const Monomial & b) -> bool = default;

        private:
            std::vector<Var> _vars;
    };

    // A term before multilinearisation: ids may repeat and appear in any order.
    struct RawTerm
    {
        Scalar coef;
        std::vector<Var> vars;
    };

    class Polynomial
    {
        public:
            using Terms = std::map<Monomial, Scalar>;

            Polynomial() = default;
            explicit Polynomial(const Field & f) : _field(f) {}
            static auto constant(const Field & f, long long c) -> Polynomial;
            static auto variable(const Field & f, Var v) -> Polynomial;
            static auto term(const Scalar & c, Monomial m) -> Polynomial;

            auto field() const -> const Field & { return _field; }
            auto terms() const -> const Terms & { return _terms; }
            auto is_zero() const -> bool { return _terms.empty(); }
            // -1 for the zero polynomial.
            auto degree() const -> int;
            auto coefficient(const Monomial & m) const -> Scalar;
            auto leading_monomial() const -> const Monomial &;
            auto max_var() const -> Var;

            auto add_term(const Monomial & m, const Scalar & c) -> void;

            auto operator+= (const Polynomial & other) -> Polynomial &;
            auto operator-= (const Polynomial & other) -> Polynomial &;
            auto operator*= (const Scalar & c) -> Polynomial &;
            friend auto operator+ (Polynomial a, const Polynomial & b) -> Polynomial { return a += b; }
            friend auto operator- (Polynomial a, const Polynomial & b) -> Polynomial { return a -= b; }
            friend auto operator* (Polynomial a, const Scalar & c) -> Polynomial { return a *= c; }
            // Multilinear product.
            friend auto operator* (const Polynomial & a, const Polynomial & b) -> Polynomial;
            friend auto operator* (const Polynomial & a, const Monomial & m) -> Polynomial;
            friend auto operator== (const Polynomial & a, const Polynomial & b) -> bool;

            // Value at a 0/1 point; assignment[v] for variable v (index 0 unused).
            auto evaluate(const std::vector<std::uint8_t> & assignment) const -> Scalar;

            auto to_string() const -> std::string;

        private:
            Field _field;
            Terms _terms;
    };

    // Reduce every exponent to 1 and collect terms.
    auto multlin(const Field & f, const std::vector<RawTerm> & raw) -> Polynomial;
}
