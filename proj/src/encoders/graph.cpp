#include <pclab/encoders/encoders.hpp>
#include <pclab/errors.hpp>

#include <deque>

using std::uint32_t;
using std::vector;

namespace pclab
{
    auto reachable(const ColoredGraph & g, uint32_t s, uint32_t t) -> bool
    {
        if (s >= g.size() || t >= g.size())
            throw UsageError("vertex out of range");
        vector<vector<uint32_t>> adj(g.size());
        if (auto r = g.find_relation("E"))
            for (auto [u, v] : g.relations()[*r].edges)
                adj[u].push_back(v);
        vector<std::uint8_t> seen(g.size(), 0);
        std::deque<uint32_t> queue{ s };
        seen[s] = 1;
        while (! queue.empty()) {
            uint32_t u = queue.front();
            queue.pop_front();
            if (u == t)
                return true;
            for (auto v : adj[u])
                if (! seen[v]) {
                    seen[v] = 1;
                    queue.push_back(v);
                }
        }
        return false;
    }

    auto random_digraph(std::mt19937_64 & rng, uint32_t n, double arc_probability) -> ColoredGraph
    {
        ColoredGraph g{ n };
        g.relation_index("E");
        std::bernoulli_distribution coin{ arc_probability };
        for (uint32_t u = 0; u < n; ++u)
            for (uint32_t v = 0; v < n; ++v)
                if (u != v && coin(rng))
                    g.add_edge("E", u, v);
        return g;
    }

    auto random_graph(std::mt19937_64 & rng, uint32_t n, double edge_probability) -> ColoredGraph
    {
        ColoredGraph g{ n };
        g.relation_index("E");
        std::bernoulli_distribution coin{ edge_probability };
        for (uint32_t u = 0; u < n; ++u)
            for (uint32_t v = u + 1; v < n; ++v)
                if (coin(rng))
                    g.add_undirected("E", u, v);
        return g;
    }

    auto encode_nonreach(const ColoredGraph & g, uint32_t s, uint32_t t) -> CnfFormula
    {
        if (s >= g.size() || t >= g.size())
            throw UsageError("vertex out of range");
        CnfFormula f;
        f.num_vars = g.size();
        if (auto r = g.find_relation("E"))
            for (auto [u, v] : g.relations()[*r].edges)
                f.add(Clause{ { neg(u + 1), pos(v + 1) } });
        f.add(Clause{ { pos(s + 1) } });
        f.add(Clause{ { neg(t + 1) } });
        return f;
    }
}
