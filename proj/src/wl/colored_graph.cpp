#include <pclab/wl/colored_graph.hpp>
#include <pclab/errors.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

using nlohmann::json;
using std::string;
using std::uint32_t;
using std::vector;

namespace pclab
{
    ColoredGraph::ColoredGraph(uint32_t n) : _n(n), _colors(n, 0)
    {
    }

    auto ColoredGraph::set_color(uint32_t v, int c) -> void
    {
        if (v >= _n)
            throw UsageError("vertex " + std::to_string(v) + " out of range");
        _colors[v] = c;
    }

    auto ColoredGraph::relation_index(const string & name) -> std::size_t
    {
        if (auto i = find_relation(name))
            return *i;
        _relations.push_back(Relation{ name, {} });
        _bits.clear();
        return _relations.size() - 1;
    }

    auto ColoredGraph::find_relation(const string & name) const -> std::optional<std::size_t>
    {
        for (std::size_t i = 0; i < _relations.size(); ++i)
            if (_relations[i].name == name)
                return i;
        return std::nullopt;
    }

    auto ColoredGraph::add_edge(const string & relation, uint32_t u, uint32_t v) -> void
    {
        if (u >= _n || v >= _n)
            throw UsageError("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
        auto r = relation_index(relation);
        _relations[r].edges.emplace_back(u, v);
        _bits.clear();
    }

    auto ColoredGraph::add_undirected(const string & relation, uint32_t u, uint32_t v) -> void
    {
        add_edge(relation, u, v);
        if (u != v)
            add_edge(relation, v, u);
    }

    auto ColoredGraph::ensure_bits() const -> void
    {
        if (_bits.size() == _relations.size())
            return;
        std::size_t words = (std::size_t(_n) * _n + 63) / 64;
        _bits.assign(_relations.size(), vector<std::uint64_t>(words, 0));
        for (std::size_t r = 0; r < _relations.size(); ++r)
            for (auto [u, v] : _relations[r].edges) {
                std::size_t bit = std::size_t(u) * _n + v;
                _bits[r][bit / 64] |= std::uint64_t{ 1 } << (bit % 64);
            }
    }

    auto ColoredGraph::has_edge(std::size_t relation, uint32_t u, uint32_t v) const -> bool
    {
        ensure_bits();
        std::size_t bit = std::size_t(u) * _n + v;
        return (_bits[relation][bit / 64] >> (bit % 64)) & 1;
    }

    auto ColoredGraph::color_classes() const -> vector<std::pair<int, vector<uint32_t>>>
    {
        std::map<int, vector<uint32_t>> classes;
        for (uint32_t v = 0; v < _n; ++v)
            classes[_colors[v]].push_back(v);
        return { classes.begin(), classes.end() };
    }

    auto ColoredGraph::relabeled(const vector<uint32_t> & perm) const -> ColoredGraph
    {
        if (perm.size() != _n)
            throw UsageError("permutation size mismatch");
        ColoredGraph g{ _n };
        for (uint32_t v = 0; v < _n; ++v)
            g._colors[perm[v]] = _colors[v];
        for (auto & r : _relations) {
            g.relation_index(r.name);
            for (auto [u, v] : r.edges)
                g.add_edge(r.name, perm[u], perm[v]);
        }
        return g;
    }

    auto read_graph_text(std::istream & in) -> ColoredGraph
    {
        long long n = -1, m = -1;
        if (! (in >> n >> m) || n < 0 || m < 0)
            throw UsageError("graph text must start with 'n m'");
        ColoredGraph g{ static_cast<uint32_t>(n) };
        g.relation_index("E");
        for (long long i = 0; i < m; ++i) {
            long long u, v;
            if (! (in >> u >> v) || u < 0 || v < 0 || u >= n || v >= n)
                throw UsageError("bad edge line " + std::to_string(i + 1));
            g.add_undirected("E", static_cast<uint32_t>(u), static_cast<uint32_t>(v));
        }
        string word;
        if (in >> word) {
            if (word != "colors")
                throw UsageError("unexpected token '" + word + "' after edge list (expected 'colors')");
            for (long long v = 0; v < n; ++v) {
                int c;
                if (! (in >> c))
                    throw UsageError("colour line must list one colour per vertex");
                g.set_color(static_cast<uint32_t>(v), c);
            }
        }
        return g;
    }

    auto read_graph_file(const string & path) -> ColoredGraph
    {
        std::ifstream in{ path };
        if (! in)
            throw UsageError("cannot open '" + path + "'");
        if (path.ends_with(".json")) {
            json j;
            try {
                in >> j;
            }
            catch (const json::exception & e) {
                throw UsageError("'" + path + "' is not valid JSON: " + e.what());
            }
            return colored_graph_from_json(j);
        }
        return read_graph_text(in);
    }

    auto write_graph_text(const ColoredGraph & g) -> string
    {
        std::ostringstream out;
        vector<std::pair<uint32_t, uint32_t>> edges;
        if (auto r = g.find_relation("E"))
            for (auto [u, v] : g.relations()[*r].edges)
                if (u <= v)
                    edges.emplace_back(u, v);
        out << g.size() << " " << edges.size() << "\n";
        for (auto [u, v] : edges)
            out << u << " " << v << "\n";
        out << "colors";
        for (int c : g.colors())
            out << " " << c;
        out << "\n";
        return out.str();
    }

    auto to_json(const ColoredGraph & g) -> json
    {
        json rels = json::array();
        for (auto & r : g.relations()) {
            json edges = json::array();
            for (auto [u, v] : r.edges)
                edges.push_back({ u, v });
            rels.push_back({ { "name", r.name }, { "edges", edges } });
        }
        return { { "n", g.size() }, { "colors", g.colors() }, { "relations", rels } };
    }

    auto colored_graph_from_json(const json & j) -> ColoredGraph
    {
        try {
            ColoredGraph g{ j.at("n").get<uint32_t>() };
            if (j.contains("colors")) {
                auto colors = j.at("colors").get<vector<int>>();
                if (colors.size() != g.size())
                    throw UsageError("colour list length differs from n");
                for (uint32_t v = 0; v < g.size(); ++v)
                    g.set_color(v, colors[v]);
            }
            if (j.contains("relations"))
                for (auto & rj : j.at("relations")) {
                    string name = rj.at("name").get<string>();
                    g.relation_index(name);
                    for (auto & e : rj.at("edges"))
                        g.add_edge(name, e.at(0).get<uint32_t>(), e.at(1).get<uint32_t>());
                }
            return g;
        }
        catch (const json::exception & e) {
            throw UsageError(string{ "malformed graph JSON: " } + e.what());
        }
    }

    auto find_isomorphism(const ColoredGraph & g, const ColoredGraph & h) -> std::optional<vector<uint32_t>>
    {
        uint32_t n = g.size();
        if (h.size() != n)
            return std::nullopt;

        std::set<string> names;
        for (auto & r : g.relations())
            names.insert(r.name);
        for (auto & r : h.relations())
            names.insert(r.name);
        vector<std::pair<std::optional<std::size_t>, std::optional<std::size_t>>> rel_pairs;
        for (auto & name : names)
            rel_pairs.emplace_back(g.find_relation(name), h.find_relation(name));

        auto same = [&] (uint32_t a, uint32_t b, uint32_t x, uint32_t y) {
            for (auto & [rg, rh] : rel_pairs) {
                bool eg = rg && g.has_edge(*rg, a, b);
                bool eh = rh && h.has_edge(*rh, x, y);
                if (eg != eh)
                    return false;
            }
            return true;
        };

        auto gc = g.colors(), hc = h.colors();
        std::sort(gc.begin(), gc.end());
        std::sort(hc.begin(), hc.end());
        if (gc != hc)
            return std::nullopt;

        // Assign vertices in BFS order over all relations so constraints bite early.
        vector<vector<uint32_t>> adj(n);
        for (auto & r : g.relations())
            for (auto [u, v] : r.edges) {
                adj[u].push_back(v);
                adj[v].push_back(u);
            }
        vector<uint32_t> order;
        vector<bool> seen(n, false);
        for (uint32_t s = 0; s < n; ++s) {
            if (seen[s])
                continue;
            seen[s] = true;
            order.push_back(s);
            for (std::size_t i = order.size() - 1; i < order.size(); ++i)
                for (uint32_t w : adj[order[i]])
                    if (! seen[w]) {
                        seen[w] = true;
                        order.push_back(w);
                    }
        }

        vector<uint32_t> image(n, 0);
        vector<bool> used(n, false);
        auto search = [&] (auto & self, std::size_t depth) -> bool {
            if (depth == n)
                return true;
            uint32_t v = order[depth];
            for (uint32_t w = 0; w < n; ++w) {
                if (used[w] || g.color(v) != h.color(w) || ! same(v, v, w, w))
                    continue;
                bool ok = true;
                for (std::size_t i = 0; i < depth && ok; ++i) {
                    uint32_t u = order[i];
                    ok = same(u, v, image[u], w) && same(v, u, w, image[u]);
                }
                if (! ok)
                    continue;
                image[v] = w;
                used[w] = true;
                if (self(self, depth + 1))
                    return true;
                used[w] = false;
            }
            return false;
        };
        if (search(search, 0))
            return image;
        return std::nullopt;
    }

    auto cycle_graph(uint32_t n) -> ColoredGraph
    {
        ColoredGraph g{ n };
        g.relation_index("E");
        for (uint32_t i = 0; i < n; ++i)
            g.add_undirected("E", i, (i + 1) % n);
        return g;
    }

    auto complete_graph(uint32_t n) -> ColoredGraph
    {
        ColoredGraph g{ n };
        g.relation_index("E");
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = i + 1; j < n; ++j)
                g.add_undirected("E", i, j);
        return g;
    }

    auto empty_graph(uint32_t n) -> ColoredGraph
    {
        ColoredGraph g{ n };
        g.relation_index("E");
        return g;
    }

    auto disjoint_union(const ColoredGraph & a, const ColoredGraph & b) -> ColoredGraph
    {
        ColoredGraph g{ a.size() + b.size() };
        for (uint32_t v = 0; v < a.size(); ++v)
            g.set_color(v, a.color(v));
        for (uint32_t v = 0; v < b.size(); ++v)
            g.set_color(a.size() + v, b.color(v));
        for (auto & r : a.relations()) {
            g.relation_index(r.name);
            for (auto [u, v] : r.edges)
                g.add_edge(r.name, u, v);
        }
        for (auto & r : b.relations()) {
            g.relation_index(r.name);
            for (auto [u, v] : r.edges)
                g.add_edge(r.name, a.size() + u, a.size() + v);
        }
        return g;
    }
}
