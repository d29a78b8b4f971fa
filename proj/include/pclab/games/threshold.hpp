#pragma once

#include <pclab/pc/poly_system.hpp>

#include <json.hpp>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace pclab
{
    // Acyclic threshold game: at v, Player 0 picks at least theta(v) successors, Player 1 moves to one of them.
    class ThresholdGame
    {
        public:
            ThresholdGame(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                    std::vector<std::uint32_t> theta, std::uint32_t start = 0);

            auto size() const -> std::uint32_t { return _n; }
            auto successors(std::uint32_t v) const -> const std::vector<std::uint32_t> & { return _succ[v]; }
            auto out_degree(std::uint32_t v) const -> std::uint32_t { return static_cast<std::uint32_t>(_succ[v].size()); }
            auto theta(std::uint32_t v) const -> std::uint32_t { return _theta[v]; }
            auto start() const -> std::uint32_t { return _start; }
            auto edges() const -> std::vector<std::pair<std::uint32_t, std::uint32_t>>;
            // Successors before predecessors.
            auto reverse_topological() const -> const std::vector<std::uint32_t> & { return _order; }

        private:
            std::uint32_t _n;
            std::vector<std::vector<std::uint32_t>> _succ;
            std::vector<std::uint32_t> _theta;
            std::uint32_t _start;
            std::vector<std::uint32_t> _order;
    };

    auto to_json(const ThresholdGame & g) -> nlohmann::json;
    auto threshold_game_from_json(const nlohmann::json & j) -> ThresholdGame;
    auto read_threshold_game(const std::string & path) -> ThresholdGame;

    struct GameSolution
    {
        std::vector<std::uint32_t> w0, w1;
        // winner[v] = 0 or 1.
        std::vector<std::uint8_t> winner;
        // ws[v] = number of successors won by Player 0.
        std::vector<std::uint32_t> ws;
    };

    auto solve_threshold_game(const ThresholdGame & g) -> GameSolution;

    enum class AxiomGroup
    {
        T,
        C,
        E,
        N
    };

    struct GameAxioms
    {
        PolySystem system;
        std::vector<AxiomGroup> groups;
        // Variable ids.
        std::vector<Var> x, x_dual;
        // y[v][m]; z[v][m][u][j] with m, j counted from 1 and u the successor position.
        std::vector<std::vector<Var>> y;
        std::vector<std::vector<std::vector<std::vector<Var>>>> z;
        std::map<std::string, Var> var_map;
    };

    auto encode_threshold_axioms(const ThresholdGame & g, const Field & field = Field::rationals()) -> GameAxioms;

    // The assignment of the consistency proof, indexed by variable id (entry 0 unused).
    auto intended_model(const ThresholdGame & g, const GameAxioms & axioms) -> std::vector<std::uint8_t>;
    auto intended_model(const ThresholdGame & g) -> std::vector<std::uint8_t>;

    // Random acyclic game: edges go from lower to higher ids, theta(v) uniform in [0, outdeg(v) + 1].
    auto random_threshold_game(std::mt19937_64 & rng, std::uint32_t n, std::uint32_t max_out) -> ThresholdGame;
}
