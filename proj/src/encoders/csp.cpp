#include <pclab/encoders/encoders.hpp>
#include <pclab/errors.hpp>

#include <algorithm>
#include <map>
#include <optional>

using std::size_t;
using std::uint32_t;
using std::vector;

namespace pclab
{
    namespace
    {
        auto check_vocabulary(const RelStructure & a, const RelStructure & t) -> void
        {
            a.validate();
            t.validate();
            for (auto & [name, r] : a.relations) {
                if (! t.has_relation(name))
                    throw UsageError("template has no relation named " + name);
                if (t.relation(name).arity != r.arity)
                    throw UsageError("relation " + name + " has different arities in instance and template");
            }
        }

        // Does the map respect every relation tuple of `a` lying inside its domain?
        auto is_partial_hom(const RelStructure & a, const RelStructure & t, const PartialMap & p) -> bool
        {
            auto image = [&] (uint32_t x) -> std::optional<uint32_t> {
                auto it = std::lower_bound(p.domain.begin(), p.domain.end(), x);
                if (it == p.domain.end() || *it != x)
                    return std::nullopt;
                return p.values[it - p.domain.begin()];
            };
            for (auto & [name, r] : a.relations) {
                const auto & target = t.relation(name);
                for (auto & tuple : r.tuples) {
                    Tuple mapped;
                    bool inside = true;
                    for (auto x : tuple) {
                        auto y = image(x);
                        if (! y) {
                            inside = false;
                            break;
                        }
                        mapped.push_back(*y);
                    }
                    if (inside && ! target.contains(mapped))
                        return false;
                }
            }
            return true;
        }

        // Calls f on every sorted subset of {0..n-1} of size at most k.
        template <typename F>
        auto for_subsets(uint32_t n, size_t k, F && f) -> void
        {
            vector<uint32_t> s;
            f(s);
            // Depth-first in lexicographic order.
            auto rec = [&] (auto & self, uint32_t from) -> void {
                if (s.size() == k)
                    return;
                for (uint32_t x = from; x < n; ++x) {
                    s.push_back(x);
                    f(s);
                    self(self, x + 1);
                    s.pop_back();
                }
            };
            rec(rec, 0);
        }

        auto restrict_to(const PartialMap & p, const vector<uint32_t> & keep) -> PartialMap
        {
            PartialMap q;
            for (size_t i = 0; i < p.domain.size(); ++i)
                if (std::binary_search(keep.begin(), keep.end(), p.domain[i])) {
                    q.domain.push_back(p.domain[i]);
                    q.values.push_back(p.values[i]);
                }
            return q;
        }
    }

    auto KConsistencyState::consistent() const -> bool
    {
        return std::any_of(alive.begin(), alive.end(), [] (std::uint8_t b) { return b != 0; });
    }

    auto k_consistency_state(const RelStructure & a, const RelStructure & t, int k, const KConsistencyOptions & options) -> KConsistencyState
    {
        if (k < 1)
            throw UsageError("k must be at least 1");
        check_vocabulary(a, t);
        KConsistencyState st;
        std::map<PartialMap, size_t> index;

        // Part^k, grouped by domain in subset order so the empty map comes first.
        std::map<vector<uint32_t>, vector<size_t>> by_domain;
        for_subsets(a.n, size_t(k), [&] (const vector<uint32_t> & dom) {
            vector<size_t> & ids = by_domain[dom];
            PartialMap p{ dom, vector<uint32_t>(dom.size(), 0) };
            if (! dom.empty() && t.n == 0)
                return;
            while (true) {
                if (is_partial_hom(a, t, p)) {
                    index.emplace(p, st.maps.size());
                    ids.push_back(st.maps.size());
                    st.maps.push_back(p);
                }
                size_t i = dom.size();
                while (i > 0 && ++p.values[i - 1] == t.n)
                    p.values[--i] = 0;
                if (i == 0)
                    break;
            }
        });

        size_t m = st.maps.size();
        st.restrictions.resize(m);
        st.extensions.resize(m);
        for (size_t id = 0; id < m; ++id) {
            const PartialMap & p = st.maps[id];
            size_t d = p.domain.size();

            // Restrictions: drop one element, or (full variant) every proper sub-map.
            if (! options.full_subsets) {
                for (size_t i = 0; i < d; ++i) {
                    auto keep = p.domain;
                    keep.erase(keep.begin() + i);
                    st.restrictions[id].push_back(index.at(restrict_to(p, keep)));
                }
            }
            else if (d > 0) {
                for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{ 1 } << d); ++mask) {
                    vector<uint32_t> keep;
                    for (size_t i = 0; i < d; ++i)
                        if (mask >> i & 1)
                            keep.push_back(p.domain[i]);
                    st.restrictions[id].push_back(index.at(restrict_to(p, keep)));
                }
            }

            // Extensions: one group per superset S.
            auto group_for = [&] (const vector<uint32_t> & s) {
                vector<size_t> group;
                for (size_t q : by_domain[s])
                    if (restrict_to(st.maps[q], p.domain) == p)
                        group.push_back(q);
                st.extensions[id].push_back(std::move(group));
            };
            if (! options.full_subsets) {
                if (d < size_t(k))
                    for (uint32_t x = 0; x < a.n; ++x)
                        if (! std::binary_search(p.domain.begin(), p.domain.end(), x)) {
                            auto s = p.domain;
                            s.insert(std::upper_bound(s.begin(), s.end(), x), x);
                            group_for(s);
                        }
            }
            else {
                for_subsets(a.n, size_t(k), [&] (const vector<uint32_t> & s) {
                    if (s.size() > d && std::includes(s.begin(), s.end(), p.domain.begin(), p.domain.end()))
                        group_for(s);
                });
            }
        }

        st.alive.assign(m, 1);
        bool changed = true;
        while (changed) {
            changed = false;
            ++st.iterations;
            vector<std::uint8_t> next = st.alive;
            for (size_t id = 0; id < m; ++id) {
                if (! st.alive[id])
                    continue;
                bool keep = std::all_of(st.restrictions[id].begin(), st.restrictions[id].end(), [&] (size_t q) { return st.alive[q]; });
                for (auto & group : st.extensions[id])
                    keep = keep && std::any_of(group.begin(), group.end(), [&] (size_t q) { return st.alive[q]; });
                if (! keep) {
                    next[id] = 0;
                    changed = true;
                }
            }
            st.alive = std::move(next);
        }
        return st;
    }

    auto k_consistency(const RelStructure & a, const RelStructure & t, int k, const KConsistencyOptions & options) -> bool
    {
        return k_consistency_state(a, t, k, options).consistent();
    }

    auto encode_kconsistency_cnf(const RelStructure & a, const RelStructure & t, int k, const KConsistencyOptions & options) -> CnfFormula
    {
        auto st = k_consistency_state(a, t, k, options);
        CnfFormula f;
        f.num_vars = static_cast<uint32_t>(st.maps.size());
        for (size_t id = 0; id < st.maps.size(); ++id) {
            uint32_t x = static_cast<uint32_t>(id + 1);
            for (auto & group : st.extensions[id]) {
                vector<Literal> lits{ neg(x) };
                for (auto q : group)
                    lits.push_back(pos(static_cast<uint32_t>(q + 1)));
                f.add(Clause{ std::move(lits) });
            }
            for (auto q : st.restrictions[id])
                f.add(Clause{ { neg(x), pos(static_cast<uint32_t>(q + 1)) } });
        }
        // The empty map is entry 0.
        f.add(Clause{ { pos(1) } });
        return f;
    }

    auto homomorphism_exists(const RelStructure & a, const RelStructure & t) -> bool
    {
        check_vocabulary(a, t);
        if (a.n == 0)
            return true;
        if (t.n == 0)
            return false;
        PartialMap p;
        for (uint32_t x = 0; x < a.n; ++x)
            p.domain.push_back(x);
        p.values.assign(a.n, 0);
        while (true) {
            if (is_partial_hom(a, t, p))
                return true;
            size_t i = a.n;
            while (i > 0 && ++p.values[i - 1] == t.n)
                p.values[--i] = 0;
            if (i == 0)
                return false;
        }
    }
}
