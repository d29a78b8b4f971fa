#pragma once

#include <pclab/pc/poly_system.hpp>

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pclab
{
    enum class Engine
    {
        monpc,
        pc
    };

    auto engine_name(Engine e) -> std::string;
    auto parse_engine(const std::string & name) -> Engine;

    // How the PC engine extracts {p in span : deg p < k} each round.
    enum class SubdegreeMethod
    {
        automatic,     // linear_system over Q, echelon over F_p
        linear_system, // solve M x = p with p vanishing on degree-k monomials, then compress_image
        echelon        // read the fully reduced sub-degree rows off the echelon basis
    };

    struct SaturateOptions
    {
        SubdegreeMethod subdegree = SubdegreeMethod::automatic;
        bool stop_on_refutation = false;
        std::optional<std::chrono::steady_clock::time_point> deadline;
        std::size_t monomial_limit = 60'000'000;
    };

    struct SaturateStats
    {
        int rounds = 0;
        std::size_t live_monomials = 0;
        std::size_t dead_generators = 0;
        std::size_t inserted = 0;
        std::size_t basis_dimension = 0;
        std::vector<std::size_t> dimension_per_round;
        double seconds = 0;
    };

    namespace detail
    {
        class BasisData;
    }

    // The saturated span. It consists of the explicit echelon vectors plus every monomial of
    // degree <= k that is a multiple of a single-term axiom (those are never materialized).
    class Basis
    {
        public:
            Basis() = default;
            explicit Basis(std::shared_ptr<const detail::BasisData> data) : _data(std::move(data)) {}

            auto field() const -> Field;
            auto degree_bound() const -> int;
            auto num_vars() const -> std::uint32_t;
            auto dimension() const -> std::size_t;
            auto vector(std::size_t i) const -> Polynomial;
            auto vectors() const -> std::vector<Polynomial>;
            auto zero_monomials() const -> std::vector<Monomial>;
            auto leading_monomial(std::size_t i) const -> Monomial;
            auto contains(const Polynomial & p) const -> bool;
            auto contains_one() const -> bool;

        private:
            std::shared_ptr<const detail::BasisData> _data;
    };

    struct SaturateResult
    {
        bool refuted = false;
        Basis basis;
        SaturateStats stats;
    };

    auto monpc_saturate(const PolySystem & p, int k, const SaturateOptions & options = {}) -> SaturateResult;
    auto pc_saturate(const PolySystem & p, int k, const SaturateOptions & options = {}) -> SaturateResult;
    auto saturate(Engine engine, const PolySystem & p, int k, const SaturateOptions & options = {}) -> SaturateResult;

    // Smallest k <= k_max at which the engine refutes P. A system containing a nonzero constant
    // is reported as degree 1.
    auto min_refutation_degree(const PolySystem & p, Engine engine, int k_max, const SaturateOptions & options = {})
        -> std::optional<int>;
}
