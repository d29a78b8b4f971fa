#include <pclab/resolution/engines.hpp>
#include <pclab/errors.hpp>

#include <algorithm>
#include <string_view>
#include <unordered_set>

using std::size_t;
using std::uint32_t;
using std::vector;

namespace pclab
{
    namespace
    {
        // Literal code 2 * var + positive; sorted codes follow the Literal order.
        auto code(Literal l) -> uint32_t
        {
            return 2 * l.var + (l.positive ? 1 : 0);
        }

        auto decode(uint32_t c) -> Literal
        {
            return Literal{ c / 2, (c & 1) != 0 };
        }

        // Clauses as slices of one flat pool of sorted literal codes.
        class ClausePool
        {
            public:
                ClausePool() : _set(64, Hash{ this }, Equal{ this }) {}

                auto size() const -> size_t { return _start.size() - 1; }
                auto begin(size_t id) const -> const uint32_t * { return _lits.data() + _start[id]; }
                auto end(size_t id) const -> const uint32_t * { return _lits.data() + _start[id + 1]; }
                auto width(size_t id) const -> size_t { return _start[id + 1] - _start[id]; }

                // Appends the candidate; returns false (and removes it again) if it was already present.
                auto push(const uint32_t * first, const uint32_t * last) -> bool
                {
                    _lits.insert(_lits.end(), first, last);
                    _start.push_back(_lits.size());
                    if (_set.insert(size() - 1).second)
                        return true;
                    pop();
                    return false;
                }

                auto contains(const uint32_t * first, const uint32_t * last) -> bool
                {
                    _lits.insert(_lits.end(), first, last);
                    _start.push_back(_lits.size());
                    bool found = _set.contains(size() - 1);
                    pop();
                    return found;
                }

            private:
                struct Hash
                {
                    const ClausePool * pool;
                    auto operator() (size_t id) const -> size_t
                    {
                        std::string_view bytes{ reinterpret_cast<const char *>(pool->begin(id)), pool->width(id) * sizeof(uint32_t) };
                        return std::hash<std::string_view>{}(bytes);
                    }
                };

                struct Equal
                {
                    const ClausePool * pool;
                    auto operator() (size_t a, size_t b) const -> bool
                    {
                        return std::equal(pool->begin(a), pool->end(a), pool->begin(b), pool->end(b));
                    }
                };

                vector<uint32_t> _lits;
                vector<size_t> _start{ 0 };
                std::unordered_set<size_t, Hash, Equal> _set;

                auto pop() -> void
                {
                    _start.pop_back();
                    _lits.resize(_start.back());
                }
        };

        // Merge a \ {on} and b \ {~on} into out; false if the result is wider than k or a tautology.
        auto resolvent(const uint32_t * a, const uint32_t * a_end, const uint32_t * b, const uint32_t * b_end,
                uint32_t on, size_t k, vector<uint32_t> & out) -> bool
        {
            out.clear();
            uint32_t off = on ^ 1;
            while (a != a_end || b != b_end) {
                uint32_t next;
                if (b == b_end || (a != a_end && *a < *b))
                    next = *a++;
                else if (a == a_end || *b < *a)
                    next = *b++;
                else {
                    next = *a++;
                    ++b;
                }
                if (next == on || next == off)
                    continue;
                if (! out.empty() && (out.back() ^ next) == 1)
                    return false;
                if (out.size() == k)
                    return false;
                out.push_back(next);
            }
            return true;
        }
    }

    auto kres_saturate(const CnfFormula & f, int k, const KresOptions & options) -> KresResult
    {
        if (k < 1)
            throw UsageError("width bound k must be at least 1");
        f.validate();
        size_t width = static_cast<size_t>(k);

        ClausePool pool;
        vector<vector<uint32_t>> occurs(2 * size_t(f.num_vars) + 2);
        vector<std::uint8_t> removed;
        vector<vector<uint32_t>> wide;
        bool refuted = false;

        // Is some subset of the candidate already derived? Enumerates all 2^w sub-clauses.
        vector<uint32_t> subset;
        auto subsumed = [&] (const vector<uint32_t> & c) {
            size_t w = c.size();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{ 1 } << w); ++mask) {
                subset.clear();
                for (size_t i = 0; i < w; ++i)
                    if (mask >> i & 1)
                        subset.push_back(c[i]);
                if (pool.contains(subset.data(), subset.data() + subset.size()))
                    return true;
            }
            return false;
        };

        // Mark derived proper supersets of c as removed; they stay in the hash set, where they
        // only ever subsume clauses that c subsumes too.
        auto remove_supersets = [&] (const vector<uint32_t> & c) {
            if (c.empty()) {
                std::fill(removed.begin(), removed.end(), 1);
                return;
            }
            uint32_t rare = *std::min_element(c.begin(), c.end(), [&] (uint32_t x, uint32_t y) {
                return occurs[x].size() < occurs[y].size();
            });
            for (auto id : occurs[rare])
                if (! removed[id] && pool.width(id) > c.size() && std::includes(pool.begin(id), pool.end(id), c.begin(), c.end()))
                    removed[id] = 1;
        };

        auto add = [&] (const vector<uint32_t> & c) {
            if (options.subsumption) {
                if (subsumed(c))
                    return;
                remove_supersets(c);
            }
            if (! pool.push(c.data(), c.data() + c.size()))
                return;
            if (pool.size() > options.clause_limit)
                throw ResourceLimit("more than " + std::to_string(options.clause_limit) + " derived clauses");
            auto id = static_cast<uint32_t>(pool.size() - 1);
            removed.push_back(0);
            for (auto l : c)
                occurs[l].push_back(id);
            if (c.empty())
                refuted = true;
        };

        vector<Clause> inputs = f.clauses;
        std::sort(inputs.begin(), inputs.end());
        vector<uint32_t> buffer;
        for (auto & c : inputs) {
            buffer.clear();
            for (auto & l : c.literals())
                buffer.push_back(code(l));
            if (c.width() <= width)
                add(buffer);
            else if (options.premise_wide)
                wide.push_back(buffer);
        }

        size_t steps = 0;
        auto stop = [&] { return refuted && (options.subsumption || options.stop_on_refutation); };
        for (size_t head = 0; head < pool.size() && ! stop(); ++head) {
            if (removed[head])
                continue;
            for (size_t i = 0; i < pool.width(head) && ! stop(); ++i) {
                uint32_t l = pool.begin(head)[i];
                // Resolve against every earlier clause; later ones pair with this one on their turn.
                const auto & partners = occurs[l ^ 1];
                for (size_t idx = 0; idx < partners.size() && partners[idx] <= head && ! stop(); ++idx) {
                    if (options.deadline && (++steps & 1023) == 0 && std::chrono::steady_clock::now() > *options.deadline)
                        throw Timeout{};
                    if (removed[partners[idx]] || removed[head])
                        continue;
                    auto p = partners[idx];
                    if (resolvent(pool.begin(head), pool.end(head), pool.begin(p), pool.end(p), l, width, buffer))
                        add(buffer);
                }
                for (auto & w : wide)
                    if (std::binary_search(w.begin(), w.end(), l ^ 1)
                            && resolvent(pool.begin(head), pool.end(head), w.data(), w.data() + w.size(), l, width, buffer))
                        add(buffer);
            }
        }

        KresResult result;
        result.refuted = refuted;
        for (size_t id = 0; id < pool.size(); ++id) {
            if (removed[id])
                continue;
            vector<Literal> lits;
            for (auto c = pool.begin(id); c != pool.end(id); ++c)
                lits.push_back(decode(*c));
            result.derived.push_back(Clause{ std::move(lits) });
        }
        if (refuted && (options.subsumption || options.stop_on_refutation))
            result.derived = { Clause{} };
        std::sort(result.derived.begin(), result.derived.end());
        return result;
    }
}
