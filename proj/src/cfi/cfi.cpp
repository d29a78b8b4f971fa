#include <pclab/cfi/cfi.hpp>
#include <pclab/algebra/linalg.hpp>
#include <pclab/errors.hpp>

#include <algorithm>

using nlohmann::json;
using std::pair;
using std::size_t;
using std::string;
using std::uint32_t;
using std::vector;

namespace pclab
{
    CfiBase::CfiBase(string name, uint32_t n, vector<pair<uint32_t, uint32_t>> edges) :
        _name(std::move(name)),
        _n(n)
    {
        for (auto [u, v] : edges) {
            if (u >= n || v >= n || u == v)
                throw UsageError("base graph edge (" + std::to_string(u) + ", " + std::to_string(v) + ") invalid");
            _edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(_edges.begin(), _edges.end());
        if (std::adjacent_find(_edges.begin(), _edges.end()) != _edges.end())
            throw UsageError("base graph has a repeated edge");

        vector<int> degree(n, 0);
        for (auto [u, v] : _edges) {
            ++degree[u];
            ++degree[v];
            _directed.emplace_back(u, v);
            _directed.emplace_back(v, u);
        }
        for (uint32_t v = 0; v < n; ++v)
            if (degree[v] != 3)
                throw UsageError("base graph is not 3-regular (vertex " + std::to_string(v) + " has degree "
                        + std::to_string(degree[v]) + ")");

        std::sort(_directed.begin(), _directed.end());
        _inverse.resize(_directed.size());
        for (size_t e = 0; e < _directed.size(); ++e) {
            auto [u, v] = _directed[e];
            _inverse[e] = std::lower_bound(_directed.begin(), _directed.end(), pair{ v, u }) - _directed.begin();
        }

        _out.resize(n);
        vector<int> filled(n, 0);
        for (size_t e = 0; e < _directed.size(); ++e)
            _out[_directed[e].first][filled[_directed[e].first]++] = e;

        // Connectivity.
        vector<bool> seen(n, false);
        vector<uint32_t> stack;
        if (n > 0) {
            stack.push_back(0);
            seen[0] = true;
        }
        while (! stack.empty()) {
            uint32_t v = stack.back();
            stack.pop_back();
            for (size_t e : _out[v]) {
                uint32_t w = _directed[e].second;
                if (! seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
            throw UsageError("base graph is not connected");
    }

    auto CfiBase::library_names() -> vector<string>
    {
        return { "k4", "prism", "cube", "petersen" };
    }

    auto CfiBase::library(const string & name) -> CfiBase
    {
        if (name == "k4")
            return CfiBase{ name, 4, { { 0, 1 }, { 0, 2 }, { 0, 3 }, { 1, 2 }, { 1, 3 }, { 2, 3 } } };
        if (name == "prism")
            return CfiBase{ name, 6, { { 0, 1 }, { 1, 2 }, { 0, 2 }, { 3, 4 }, { 4, 5 }, { 3, 5 }, { 0, 3 }, { 1, 4 }, { 2, 5 } } };
        if (name == "cube") {
            vector<pair<uint32_t, uint32_t>> edges;
            for (uint32_t v = 0; v < 8; ++v)
                for (uint32_t bit = 1; bit < 8; bit <<= 1)
                    if (v < (v ^ bit))
                        edges.emplace_back(v, v ^ bit);
            return CfiBase{ name, 8, edges };
        }
        if (name == "petersen") {
            vector<pair<uint32_t, uint32_t>> edges;
            for (uint32_t i = 0; i < 5; ++i) {
                edges.emplace_back(i, (i + 1) % 5);
                edges.emplace_back(5 + i, 5 + (i + 2) % 5);
                edges.emplace_back(i, 5 + i);
            }
            return CfiBase{ name, 10, edges };
        }
        throw UsageError("unknown base graph '" + name + "' (library: k4, prism, cube, petersen)");
    }

    auto CfiBase::read_text(std::istream & in, const string & name) -> CfiBase
    {
        long long n = -1, m = -1;
        if (! (in >> n >> m) || n < 0 || m < 0)
            throw UsageError("base graph text must start with 'n m'");
        vector<pair<uint32_t, uint32_t>> edges;
        for (long long i = 0; i < m; ++i) {
            long long u, v;
            if (! (in >> u >> v) || u < 0 || v < 0)
                throw UsageError("bad edge line " + std::to_string(i + 1));
            edges.emplace_back(static_cast<uint32_t>(u), static_cast<uint32_t>(v));
        }
        return CfiBase{ name, static_cast<uint32_t>(n), edges };
    }

    CfiStructure::CfiStructure(CfiBase base, uint32_t p, vector<uint32_t> lambda) :
        _base(std::move(base)),
        _p(p),
        _lambda(std::move(lambda))
    {
        if (! is_prime_number(p))
            throw UsageError(std::to_string(p) + " is not prime");
        if (_lambda.size() != _base.num_vertices())
            throw UsageError("load vector has " + std::to_string(_lambda.size()) + " entries for "
                    + std::to_string(_base.num_vertices()) + " base vertices");
        for (auto x : _lambda)
            if (x >= p)
                throw UsageError("load entry " + std::to_string(x) + " is not below p = " + std::to_string(p));

        auto & dir = _base.directed();
        for (size_t e = 0; e < dir.size(); ++e)
            for (uint32_t x = 0; x < p; ++x) {
                _cycle.emplace_back(element(e, x), element(e, (x + 1) % p));
                _inverse_rel.emplace_back(element(e, x), element(_base.inverse(e), (p - x) % p));
            }

        for (uint32_t v = 0; v < _base.num_vertices(); ++v) {
            auto & out = _base.out_edges(v);
            for (uint32_t x1 = 0; x1 < p; ++x1)
                for (uint32_t x2 = 0; x2 < p; ++x2) {
                    uint32_t x3 = (_lambda[v] + 2 * p - x1 - x2) % p;
                    _tuples.push_back(CfiTuple{ v, { element(out[0], x1), element(out[1], x2), element(out[2], x3) } });
                }
        }
    }

    auto CfiStructure::lambda_sum() const -> uint32_t
    {
        std::uint64_t s = 0;
        for (auto x : _lambda)
            s += x;
        return static_cast<uint32_t>(s % _p);
    }

    auto build_cfi(const CfiBase & base, uint32_t p, const vector<uint32_t> & lambda) -> CfiStructure
    {
        return CfiStructure{ base, p, lambda };
    }

    auto satisfies_inv(const CfiBase & base, uint32_t p, const vector<uint32_t> & pi) -> bool
    {
        if (pi.size() != base.directed().size())
            return false;
        for (size_t e = 0; e < pi.size(); ++e)
            if ((pi[e] + pi[base.inverse(e)]) % p != 0)
                return false;
        return true;
    }

    auto satisfies_cfi(const CfiBase & base, uint32_t p, const vector<uint32_t> & pi) -> bool
    {
        for (uint32_t v = 0; v < base.num_vertices(); ++v) {
            std::uint64_t s = 0;
            for (size_t e : base.out_edges(v))
                s += pi[e];
            if (s % p != 0)
                return false;
        }
        return true;
    }

    auto automorphism_space(const CfiBase & base, uint32_t p) -> AutSpace
    {
        Field f = Field::prime(p);
        size_t ne = base.directed().size();
        size_t n_inv = base.num_edges();
        Matrix m{ f, IndexList::range(n_inv + base.num_vertices()), IndexList::range(ne) };

        size_t row = 0;
        for (size_t e = 0; e < ne; ++e)
            if (e < base.inverse(e)) {
                m.set_at(row, e, Scalar::one(f));
                m.set_at(row, base.inverse(e), Scalar::one(f));
                ++row;
            }
        for (uint32_t v = 0; v < base.num_vertices(); ++v) {
            for (size_t e : base.out_edges(v))
                m.set_at(row, e, Scalar::one(f));
            ++row;
        }

        AutSpace aut{ p, {} };
        for (auto & k : kernel_basis(m)) {
            vector<uint32_t> pi(ne, 0);
            for (auto & [pos, v] : k.entries())
                pi[pos] = v.residue();
            if (! satisfies_inv(base, p, pi) || ! satisfies_cfi(base, p, pi))
                throw std::logic_error("automorphism basis vector violates its constraints");
            aut.basis.push_back(std::move(pi));
        }
        return aut;
    }

    auto apply_shift(const CfiStructure & s, const vector<uint32_t> & pi) -> CfiStructure
    {
        if (! satisfies_inv(s.base(), s.p(), pi))
            throw UsageError("shift vector violates the inverse constraint pi(e) + pi(e^-1) = 0");
        vector<uint32_t> lambda = s.lambda();
        for (uint32_t v = 0; v < s.base().num_vertices(); ++v)
            for (size_t e : s.base().out_edges(v))
                lambda[v] = (lambda[v] + pi[e]) % s.p();
        return CfiStructure{ s.base(), s.p(), lambda };
    }

    auto shift_map(const CfiStructure & s, const vector<uint32_t> & pi) -> vector<uint32_t>
    {
        vector<uint32_t> map(s.universe_size());
        for (size_t e = 0; e < s.base().directed().size(); ++e)
            for (uint32_t x = 0; x < s.p(); ++x)
                map[s.element(e, x)] = s.element(e, (x + pi[e]) % s.p());
        return map;
    }

    auto is_cfi_isomorphism(const CfiStructure & a, const CfiStructure & b, const vector<uint32_t> & map) -> bool
    {
        if (a.universe_size() != b.universe_size() || map.size() != a.universe_size())
            return false;
        vector<uint32_t> seen(map.size(), 0);
        for (auto x : map) {
            if (x >= map.size() || seen[x]++)
                return false;
        }
        for (uint32_t x = 0; x < map.size(); ++x)
            if (a.edge_class(x) != b.edge_class(map[x]))
                return false;

        auto mapped_pairs = [&] (const vector<pair<uint32_t, uint32_t>> & rel) {
            vector<pair<uint32_t, uint32_t>> out;
            for (auto [x, y] : rel)
                out.emplace_back(map[x], map[y]);
            std::sort(out.begin(), out.end());
            return out;
        };
        auto sorted = [] (vector<pair<uint32_t, uint32_t>> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        if (mapped_pairs(a.cycle()) != sorted(b.cycle()) || mapped_pairs(a.inverse_pairs()) != sorted(b.inverse_pairs()))
            return false;

        vector<std::array<uint32_t, 3>> ra, rb;
        for (auto & t : a.tuples())
            ra.push_back({ map[t.elements[0]], map[t.elements[1]], map[t.elements[2]] });
        for (auto & t : b.tuples())
            rb.push_back(t.elements);
        std::sort(ra.begin(), ra.end());
        std::sort(rb.begin(), rb.end());
        return ra == rb;
    }

    auto cfi_isomorphic(const CfiStructure & a, const CfiStructure & b) -> bool
    {
        if (a.p() != b.p() || a.base().edges() != b.base().edges() || a.base().num_vertices() != b.base().num_vertices())
            throw UsageError("cfi_isomorphic needs structures over the same base graph and prime");
        return a.lambda_sum() == b.lambda_sum();
    }

    auto twisted_pair(const CfiBase & base, uint32_t p) -> pair<CfiStructure, CfiStructure>
    {
        vector<uint32_t> zero(base.num_vertices(), 0), twisted(base.num_vertices(), 0);
        twisted[0] = 1;
        return { CfiStructure{ base, p, zero }, CfiStructure{ base, p, twisted } };
    }

    auto to_graph(const CfiStructure & s) -> ColoredGraph
    {
        uint32_t u = s.universe_size();
        auto & tuples = s.tuples();
        int edge_classes = static_cast<int>(s.base().directed().size());
        ColoredGraph g{ u + static_cast<uint32_t>(tuples.size()) };
        g.relation_index("R");
        g.relation_index("C");
        g.relation_index("I");
        for (uint32_t a = 0; a < u; ++a)
            g.set_color(a, static_cast<int>(s.edge_class(a)));
        for (size_t i = 0; i < tuples.size(); ++i) {
            uint32_t inner = u + static_cast<uint32_t>(i);
            g.set_color(inner, edge_classes + static_cast<int>(tuples[i].vertex));
            for (auto a : tuples[i].elements)
                g.add_undirected("R", inner, a);
        }
        for (auto [a, b] : s.cycle())
            g.add_edge("C", a, b);
        for (auto [a, b] : s.inverse_pairs())
            g.add_edge("I", a, b);
        return g;
    }

    auto coordinate_orbits(const CfiStructure & s, const AutSpace & aut) -> vector<vector<uint32_t>>
    {
        size_t ne = s.base().directed().size();
        vector<vector<uint32_t>> orbits;
        for (size_t e = 0; e < ne; ++e) {
            bool moves = std::any_of(aut.basis.begin(), aut.basis.end(), [&] (auto & pi) { return pi[e] != 0; });
            if (moves) {
                vector<uint32_t> orbit;
                for (uint32_t x = 0; x < s.p(); ++x)
                    orbit.push_back(s.element(e, x));
                orbits.push_back(std::move(orbit));
            }
            else
                for (uint32_t x = 0; x < s.p(); ++x)
                    orbits.push_back({ s.element(e, x) });
        }
        return orbits;
    }

    auto to_json(const CfiStructure & s) -> json
    {
        json pairs_c = json::array(), pairs_i = json::array(), triples = json::array(), le = json::array();
        for (auto [a, b] : s.cycle())
            pairs_c.push_back({ a, b });
        for (auto [a, b] : s.inverse_pairs())
            pairs_i.push_back({ a, b });
        for (auto & t : s.tuples())
            triples.push_back(t.elements);
        for (uint32_t a = 0; a < s.universe_size(); ++a)
            for (uint32_t b = 0; b < s.universe_size(); ++b)
                if (s.edge_class(a) <= s.edge_class(b))
                    le.push_back({ a, b });

        json edges = json::array();
        for (auto [u, v] : s.base().edges())
            edges.push_back({ u, v });
        return {
            { "n", s.universe_size() },
            { "relations", {
                { "LE", { { "arity", 2 }, { "tuples", le } } },
                { "C", { { "arity", 2 }, { "tuples", pairs_c } } },
                { "I", { { "arity", 2 }, { "tuples", pairs_i } } },
                { "R", { { "arity", 3 }, { "tuples", triples } } } } },
            { "cfi", { { "base", s.base().name() }, { "base_n", s.base().num_vertices() }, { "base_edges", edges },
                         { "p", s.p() }, { "lambda", s.lambda() } } }
        };
    }
}
