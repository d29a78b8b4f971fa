#include <pclab/resolution/engines.hpp>
#include <pclab/errors.hpp>

using std::uint32_t;
using std::vector;

namespace pclab
{
    auto horn_refute(const CnfFormula & f) -> HornResult
    {
        f.validate();
        for (auto & c : f.clauses)
            if (! c.is_horn())
                throw UsageError("clause " + c.to_string() + " is not Horn");

        // For each clause, the number of negative literals whose variable is not yet derived.
        vector<size_t> pending(f.clauses.size(), 0);
        vector<vector<size_t>> watchers(f.num_vars + 1);
        vector<std::uint8_t> derived(f.num_vars + 1, 0);
        vector<uint32_t> queue;
        HornResult result;

        auto fire = [&] (size_t i) {
            const Clause & c = f.clauses[i];
            for (auto & l : c.literals())
                if (l.positive) {
                    if (! derived[l.var]) {
                        derived[l.var] = 1;
                        queue.push_back(l.var);
                    }
                    return;
                }
            result.refuted = true;
        };

        for (size_t i = 0; i < f.clauses.size(); ++i) {
            for (auto & l : f.clauses[i].literals())
                if (! l.positive) {
                    ++pending[i];
                    watchers[l.var].push_back(i);
                }
            if (pending[i] == 0)
                fire(i);
        }

        for (size_t head = 0; head < queue.size(); ++head)
            for (size_t i : watchers[queue[head]])
                if (--pending[i] == 0)
                    fire(i);

        for (uint32_t v = 1; v <= f.num_vars; ++v)
            if (derived[v])
                result.derived_units.push_back(v);
        return result;
    }
}
