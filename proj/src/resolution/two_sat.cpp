#include <pclab/resolution/engines.hpp>
#include <pclab/errors.hpp>

#include <algorithm>

using std::size_t;
using std::vector;

namespace pclab
{
    auto two_sat_oracle(const CnfFormula & f) -> bool
    {
        f.validate();
        size_t nodes = 2 * size_t(f.num_vars) + 2;
        auto node = [] (Literal l) { return 2 * size_t(l.var) + (l.positive ? 1 : 0); };

        vector<vector<size_t>> adj(nodes);
        for (auto & c : f.clauses) {
            if (c.width() > 2)
                throw UsageError("clause " + c.to_string() + " is wider than 2");
            if (c.empty())
                return false;
            Literal a = c.literals()[0];
            Literal b = c.width() == 2 ? c.literals()[1] : a;
            adj[node(~a)].push_back(node(b));
            adj[node(~b)].push_back(node(a));
        }

        // Tarjan's algorithm, iterative.
        vector<long> index(nodes, -1), low(nodes, 0), comp(nodes, -1);
        vector<size_t> stack, call, edge_pos(nodes, 0);
        vector<bool> on_stack(nodes, false);
        long counter = 0, components = 0;
        for (size_t root = 2; root < nodes; ++root) {
            if (index[root] != -1)
                continue;
            call.push_back(root);
            while (! call.empty()) {
                size_t v = call.back();
                if (index[v] == -1) {
                    index[v] = low[v] = counter++;
                    stack.push_back(v);
                    on_stack[v] = true;
                }
                if (edge_pos[v] < adj[v].size()) {
                    size_t w = adj[v][edge_pos[v]++];
                    if (index[w] == -1)
                        call.push_back(w);
                    else if (on_stack[w])
                        low[v] = std::min(low[v], index[w]);
                    continue;
                }
                call.pop_back();
                if (! call.empty())
                    low[call.back()] = std::min(low[call.back()], low[v]);
                if (low[v] == index[v]) {
                    size_t w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = components;
                    } while (w != v);
                    ++components;
                }
            }
        }

        for (std::uint32_t v = 1; v <= f.num_vars; ++v)
            if (comp[2 * size_t(v)] == comp[2 * size_t(v) + 1])
                return false;
        return true;
    }
}
