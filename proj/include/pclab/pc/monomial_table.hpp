#pragma once

#include <pclab/pc/polynomial.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace pclab
{
    // Monomials known to lie in the span from the start: every multiple of one of the
    // generators (single-term axioms).
    class DeadSet
    {
        public:
            explicit DeadSet(std::uint32_t num_vars);

            auto add(const Monomial & m) -> void;
            auto empty() const -> bool { return _count == 0; }
            auto generators() const -> std::vector<Monomial>;
            auto contains_constant() const -> bool { return _constant; }

            // Given a monomial `prefix` that is not dead and a variable x larger than all of its
            // entries, is prefix * x dead?
            auto extension_dead(std::span<const Var> prefix, Var x) const -> bool;
            auto is_dead(std::span<const Var> m) const -> bool;

        private:
            std::uint32_t _num_vars;
            std::size_t _count = 0;
            bool _constant = false;
            std::vector<std::uint8_t> _dead_var;
            std::vector<std::uint64_t> _pair_bits;
            bool _use_pair_bits;
            // Generators of degree >= 2 indexed by their largest variable, stored without it.
            std::vector<std::vector<std::vector<Var>>> _by_max;

            auto pair_dead(Var a, Var b) const -> bool;
    };

    // All live (not dead) monomials of degree <= k, numbered in graded lexicographic order, so
    // column ids compare like the monomials themselves. Column 0 is the constant monomial.
    class MonomialTable
    {
        public:
            static constexpr std::uint32_t absent = ~std::uint32_t{ 0 };

            MonomialTable(std::uint32_t num_vars, int k, const DeadSet & dead, std::size_t size_limit);

            auto size() const -> std::size_t { return _degree.size(); }
            auto max_degree() const -> int { return _k; }
            auto num_vars() const -> std::uint32_t { return _num_vars; }
            auto degree(std::uint32_t col) const -> int { return _degree[col]; }
            auto vars(std::uint32_t col) const -> std::span<const Var>
            {
                return { _flat.data() + std::size_t(col) * _stride, std::size_t(_degree[col]) };
            }
            auto monomial(std::uint32_t col) const -> Monomial;
            // First column of the given degree (size() if none).
            auto degree_begin(int d) const -> std::uint32_t { return _degree_begin[d]; }

            // Column of the monomial with these (sorted, distinct) variables, or absent.
            auto find(std::span<const Var> m) const -> std::uint32_t;

            // Column of vars(col) * x, or absent when dead or above degree k.
            auto find_product(std::uint32_t col, Var x) const -> std::uint32_t;

        private:
            std::uint32_t _num_vars;
            int _k;
            std::size_t _stride;
            std::vector<Var> _flat;
            std::vector<std::uint8_t> _degree;
            std::vector<std::uint32_t> _degree_begin;
            std::vector<std::uint32_t> _slots;
            std::uint64_t _mask = 0;

            static auto hash(std::span<const Var> m) -> std::uint64_t;
            auto insert_slot(std::uint32_t col) -> void;
    };
}
