#include <pclab/games/threshold.hpp>
#include <pclab/errors.hpp>

#include <algorithm>
#include <fstream>

using nlohmann::json;
using std::string;
using std::uint32_t;
using std::vector;

namespace pclab
{
    ThresholdGame::ThresholdGame(uint32_t n, vector<std::pair<uint32_t, uint32_t>> edges, vector<uint32_t> theta, uint32_t start) :
        _n(n), _succ(n), _theta(std::move(theta)), _start(start)
    {
        if (_theta.size() != n)
            throw UsageError("theta has " + std::to_string(_theta.size()) + " entries for " + std::to_string(n) + " nodes");
        if (n > 0 && start >= n)
            throw UsageError("start node out of range");
        for (auto [u, v] : edges) {
            if (u >= n || v >= n)
                throw UsageError("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
            _succ[u].push_back(v);
        }
        for (uint32_t v = 0; v < n; ++v) {
            auto & s = _succ[v];
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw UsageError("duplicate edge out of node " + std::to_string(v));
            if (_theta[v] > s.size() + 1)
                throw UsageError("theta(" + std::to_string(v) + ") = " + std::to_string(_theta[v]) + " exceeds out-degree + 1");
        }

        // Kahn on the reversed graph: a node is ready once all its successors are placed.
        vector<uint32_t> remaining(n);
        vector<vector<uint32_t>> pred(n);
        for (uint32_t v = 0; v < n; ++v) {
            remaining[v] = static_cast<uint32_t>(_succ[v].size());
            for (auto w : _succ[v])
                pred[w].push_back(v);
        }
        for (uint32_t v = 0; v < n; ++v)
            if (remaining[v] == 0)
                _order.push_back(v);
        for (std::size_t head = 0; head < _order.size(); ++head)
            for (auto u : pred[_order[head]])
                if (--remaining[u] == 0)
                    _order.push_back(u);
        if (_order.size() != n)
            throw UsageError("game graph has a cycle");
    }

    auto ThresholdGame::edges() const -> vector<std::pair<uint32_t, uint32_t>>
    {
        vector<std::pair<uint32_t, uint32_t>> out;
        for (uint32_t v = 0; v < _n; ++v)
            for (auto w : _succ[v])
                out.emplace_back(v, w);
        return out;
    }

    auto to_json(const ThresholdGame & g) -> json
    {
        json edges = json::array(), theta = json::array();
        for (auto [u, v] : g.edges())
            edges.push_back({ u, v });
        for (uint32_t v = 0; v < g.size(); ++v)
            theta.push_back(g.theta(v));
        return { { "n", g.size() }, { "edges", edges }, { "theta", theta }, { "start", g.start() } };
    }

    auto threshold_game_from_json(const json & j) -> ThresholdGame
    {
        try {
            auto n = j.at("n").get<uint32_t>();
            vector<std::pair<uint32_t, uint32_t>> edges;
            for (auto & e : j.at("edges")) {
                if (! e.is_array() || e.size() != 2)
                    throw UsageError("game edges must be pairs");
                edges.emplace_back(e[0].get<uint32_t>(), e[1].get<uint32_t>());
            }
            return ThresholdGame{ n, std::move(edges), j.at("theta").get<vector<uint32_t>>(), j.value("start", 0u) };
        }
        catch (const json::exception & e) {
            throw UsageError(string{ "bad game JSON: " } + e.what());
        }
    }

    auto read_threshold_game(const string & path) -> ThresholdGame
    {
        std::ifstream in{ path };
        if (! in)
            throw UsageError("cannot open '" + path + "'");
        try {
            return threshold_game_from_json(json::parse(in));
        }
        catch (const json::parse_error & e) {
            throw UsageError("'" + path + "' is not valid JSON: " + e.what());
        }
    }

    auto solve_threshold_game(const ThresholdGame & g) -> GameSolution
    {
        GameSolution s;
        s.winner.assign(g.size(), 1);
        s.ws.assign(g.size(), 0);
        for (auto v : g.reverse_topological()) {
            for (auto w : g.successors(v))
                s.ws[v] += s.winner[w] == 0;
            s.winner[v] = s.ws[v] >= g.theta(v) ? 0 : 1;
        }
        for (uint32_t v = 0; v < g.size(); ++v)
            (s.winner[v] == 0 ? s.w0 : s.w1).push_back(v);
        return s;
    }

    auto encode_threshold_axioms(const ThresholdGame & g, const Field & field) -> GameAxioms
    {
        GameAxioms out;
        uint32_t n = g.size();
        auto & sys = out.system;
        sys.field = field;

        auto fresh = [&] (string name) {
            Var v = ++sys.num_vars;
            out.var_map.emplace(name, v);
            sys.names.push_back(std::move(name));
            return v;
        };

        for (uint32_t v = 0; v < n; ++v)
            out.x.push_back(fresh("X_" + std::to_string(v)));
        out.y.resize(n);
        for (uint32_t v = 0; v < n; ++v)
            for (uint32_t m = 0; m <= g.out_degree(v); ++m)
                out.y[v].push_back(fresh("Y_" + std::to_string(v) + "^" + std::to_string(m)));
        out.z.resize(n);
        for (uint32_t v = 0; v < n; ++v) {
            uint32_t s = g.out_degree(v);
            if (s == 0)
                continue;
            out.z[v].resize(s + 1);
            for (uint32_t m = 1; m <= s; ++m) {
                out.z[v][m].resize(s);
                for (uint32_t i = 0; i < s; ++i) {
                    out.z[v][m][i].push_back(0);
                    for (uint32_t j = 1; j <= m; ++j)
                        out.z[v][m][i].push_back(fresh("Z_" + std::to_string(v) + "^" + std::to_string(m) + "["
                                    + std::to_string(g.successors(v)[i]) + "->" + std::to_string(j) + "]"));
                }
            }
        }
        for (uint32_t v = 0; v < n; ++v)
            out.x_dual.push_back(fresh("~X_" + std::to_string(v)));

        auto one = Scalar::one(field);
        auto minus_one = -one;
        auto mono = [] (std::initializer_list<Var> vars) { return Monomial{ vector<Var>(vars) }; };
        auto emit = [&] (AxiomGroup group, Polynomial p) {
            sys.axioms.push_back(std::move(p));
            out.groups.push_back(group);
        };

        // (T)
        for (uint32_t v = 0; v < n; ++v) {
            if (g.theta(v) == 0) {
                Polynomial p{ field };
                p.add_term(mono({ out.x[v] }), one);
                p.add_term(Monomial{}, minus_one);
                emit(AxiomGroup::T, std::move(p));
            }
            else if (g.theta(v) > g.out_degree(v))
                emit(AxiomGroup::T, Polynomial::variable(field, out.x[v]));
        }

        // (C)
        for (uint32_t v = 0; v < n; ++v) {
            uint32_t s = g.out_degree(v);
            if (s == 0)
                continue;
            const auto & succ = g.successors(v);
            for (uint32_t m = 1; m <= s; ++m)
                for (uint32_t i = 0; i < s; ++i) {
                    Polynomial p{ field };
                    for (uint32_t j = 1; j <= m; ++j)
                        p.add_term(mono({ out.z[v][m][i][j] }), one);
                    p.add_term(mono({ out.y[v][m] }), minus_one);
                    emit(AxiomGroup::C, std::move(p));
                }
            for (uint32_t m = 1; m <= s; ++m)
                for (uint32_t j = 1; j <= m; ++j) {
                    Polynomial p{ field };
                    for (uint32_t i = 0; i < s; ++i)
                        p.add_term(Monomial{ vector<Var>{ out.x[succ[i]] } } * mono({ out.z[v][m][i][j] }), one);
                    p.add_term(mono({ out.y[v][m] }), minus_one);
                    emit(AxiomGroup::C, std::move(p));
                }
            Polynomial p{ field };
            for (uint32_t i = 0; i < s; ++i)
                p.add_term(Monomial{ vector<Var>{ out.x[succ[i]] } } * mono({ out.y[v][0] }), one);
            emit(AxiomGroup::C, std::move(p));
        }

        // (E)
        for (uint32_t v = 0; v < n; ++v) {
            Polynomial lose{ field }, win{ field };
            lose.add_term(Monomial{}, one);
            lose.add_term(mono({ out.x[v] }), minus_one);
            win.add_term(mono({ out.x[v] }), one);
            for (uint32_t m = 0; m <= g.out_degree(v); ++m)
                (m < g.theta(v) ? lose : win).add_term(mono({ out.y[v][m] }), minus_one);
            emit(AxiomGroup::E, std::move(lose));
            emit(AxiomGroup::E, std::move(win));
        }

        // (N)
        for (uint32_t v = 0; v < n; ++v) {
            Polynomial p{ field };
            p.add_term(Monomial{}, one);
            p.add_term(mono({ out.x[v] }), minus_one);
            p.add_term(mono({ out.x_dual[v] }), minus_one);
            emit(AxiomGroup::N, std::move(p));
        }
        return out;
    }

    auto intended_model(const ThresholdGame & g, const GameAxioms & axioms) -> vector<std::uint8_t>
    {
        auto sol = solve_threshold_game(g);
        vector<std::uint8_t> a(axioms.system.num_vars + 1, 0);
        for (uint32_t v = 0; v < g.size(); ++v) {
            bool won = sol.winner[v] == 0;
            a[axioms.x[v]] = won;
            a[axioms.x_dual[v]] = ! won;
            a[axioms.y[v][sol.ws[v]]] = 1;

            uint32_t m = sol.ws[v];
            if (m == 0)
                continue;
            // Player 0's successors take positions 1..m in order; the others all point at position 1.
            uint32_t next = 1;
            const auto & succ = g.successors(v);
            for (uint32_t i = 0; i < succ.size(); ++i) {
                if (sol.winner[succ[i]] == 0)
                    a[axioms.z[v][m][i][next++]] = 1;
                else
                    a[axioms.z[v][m][i][1]] = 1;
            }
        }
        return a;
    }

    auto intended_model(const ThresholdGame & g) -> vector<std::uint8_t>
    {
        return intended_model(g, encode_threshold_axioms(g));
    }

    auto random_threshold_game(std::mt19937_64 & rng, uint32_t n, uint32_t max_out) -> ThresholdGame
    {
        vector<std::pair<uint32_t, uint32_t>> edges;
        vector<uint32_t> theta(n, 0);
        for (uint32_t v = 0; v < n; ++v) {
            vector<uint32_t> later;
            for (uint32_t w = v + 1; w < n; ++w)
                later.push_back(w);
            std::shuffle(later.begin(), later.end(), rng);
            uint32_t cap = std::min<uint32_t>(max_out, static_cast<uint32_t>(later.size()));
            uint32_t deg = std::uniform_int_distribution<uint32_t>(0, cap)(rng);
            for (uint32_t i = 0; i < deg; ++i)
                edges.emplace_back(v, later[i]);
            theta[v] = std::uniform_int_distribution<uint32_t>(0, deg + 1)(rng);
        }
        return ThresholdGame{ n, std::move(edges), std::move(theta), 0 };
    }
}
