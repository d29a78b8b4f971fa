#include <pclab/wl/wl.hpp>
#include <pclab/errors.hpp>

#include <algorithm>
#include <bit>
#include <set>

using std::size_t;
using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace pclab
{
    namespace
    {
        auto splitmix(uint64_t x) -> uint64_t
        {
            x += 0x9e3779b97f4a7c15ull;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
            return x ^ (x >> 31);
        }

        // 128-bit fingerprint of a sequence of words. Colour classes are interned by fingerprint,
        // which keeps memory proportional to the number of tuples rather than signature length.
        struct Fingerprint
        {
            uint64_t a = 0x243f6a8885a308d3ull, b = 0x13198a2e03707344ull;

            auto add(uint64_t x) -> void
            {
                a = splitmix(a ^ x);
                b = splitmix(b + (x ^ 0xa4093822299f31d0ull)) ^ (b >> 17);
            }

            friend auto operator<=> (const Fingerprint &, const Fingerprint &) = default;
        };

        struct Side
        {
            const ColoredGraph * graph;
            vector<std::optional<size_t>> rel;
            vector<uint32_t> color;
        };

        // Replace per-tuple fingerprints by dense ids, ordered by fingerprint.
        auto canonicalize(vector<Fingerprint> & fg, vector<Fingerprint> & fh, vector<uint32_t> & cg, vector<uint32_t> & ch) -> size_t
        {
            vector<Fingerprint> all;
            all.reserve(fg.size() + fh.size());
            all.insert(all.end(), fg.begin(), fg.end());
            all.insert(all.end(), fh.begin(), fh.end());
            std::sort(all.begin(), all.end());
            all.erase(std::unique(all.begin(), all.end()), all.end());
            auto id = [&] (const Fingerprint & f) {
                return static_cast<uint32_t>(std::lower_bound(all.begin(), all.end(), f) - all.begin());
            };
            for (size_t i = 0; i < fg.size(); ++i)
                cg[i] = id(fg[i]);
            for (size_t i = 0; i < fh.size(); ++i)
                ch[i] = id(fh[i]);
            return all.size();
        }

        auto histograms_differ(const vector<uint32_t> & cg, const vector<uint32_t> & ch, size_t colors) -> bool
        {
            vector<long long> count(colors, 0);
            for (auto c : cg)
                ++count[c];
            for (auto c : ch)
                --count[c];
            return std::any_of(count.begin(), count.end(), [] (long long x) { return x != 0; });
        }
    }

    auto wl_run(const ColoredGraph & g, const ColoredGraph & h, int dim, const WlOptions & options) -> WlResult
    {
        if (dim < 1)
            throw UsageError("WL dimension must be at least 1");
        if (g.size() != h.size())
            return WlResult{ true, 0, 0 };

        size_t n = g.size();
        size_t tuples = 1;
        for (int i = 0; i < dim; ++i) {
            if (n != 0 && tuples > options.tuple_limit / n)
                throw ResourceLimit(std::to_string(n) + "^" + std::to_string(dim) + " tuples exceed the limit");
            tuples *= n;
        }
        if (n == 0)
            return WlResult{};

        std::set<std::string> names;
        for (auto & r : g.relations())
            names.insert(r.name);
        for (auto & r : h.relations())
            names.insert(r.name);

        Side sides[2] = { { &g, {}, {} }, { &h, {}, {} } };
        for (auto & s : sides)
            for (auto & name : names)
                s.rel.push_back(s.graph->find_relation(name));

        auto edge = [] (const Side & s, size_t r, uint32_t u, uint32_t v) {
            return s.rel[r] && s.graph->has_edge(*s.rel[r], u, v);
        };

        vector<size_t> power(dim);
        for (int i = dim - 1, p = 1; i >= 0; --i, p *= static_cast<int>(n))
            power[i] = static_cast<size_t>(p);
        auto decode = [&] (size_t t, vector<uint32_t> & digits) {
            for (int i = dim - 1; i >= 0; --i) {
                digits[i] = static_cast<uint32_t>(t % n);
                t /= n;
            }
        };

        auto check_deadline = [&] {
            if (options.deadline && std::chrono::steady_clock::now() > *options.deadline)
                throw Timeout{};
        };

        // Initial colours: ordered isomorphism type over colours and every relation.
        vector<Fingerprint> fp[2];
        vector<uint32_t> digits(dim);
        for (int side = 0; side < 2; ++side) {
            auto & s = sides[side];
            fp[side].resize(tuples);
            for (size_t t = 0; t < tuples; ++t) {
                decode(t, digits);
                Fingerprint f;
                for (int i = 0; i < dim; ++i)
                    f.add(static_cast<uint64_t>(static_cast<std::int64_t>(s.graph->color(digits[i]))));
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j) {
                        uint64_t word = digits[i] == digits[j];
                        for (size_t r = 0; r < s.rel.size(); ++r)
                            word = (word << 1) | edge(s, r, digits[i], digits[j]);
                        f.add(word);
                    }
                fp[side][t] = f;
            }
        }
        sides[0].color.resize(tuples);
        sides[1].color.resize(tuples);
        size_t colors = canonicalize(fp[0], fp[1], sides[0].color, sides[1].color);

        WlResult result;
        result.colors = colors;
        if (histograms_differ(sides[0].color, sides[1].color, colors)) {
            result.distinguished = true;
            return result;
        }

        vector<uint64_t> keys(n);
        while (true) {
            check_deadline();
            int bits = std::max(1, static_cast<int>(std::bit_width(colors)));
            int atp_bits = dim == 1 ? 1 + 2 * static_cast<int>(names.size()) : 0;
            bool exact = bits * dim + atp_bits <= 64;

            for (int side = 0; side < 2; ++side) {
                auto & s = sides[side];
                for (size_t t = 0; t < tuples; ++t) {
                    decode(t, digits);
                    for (uint32_t z = 0; z < n; ++z) {
                        uint64_t key = 0;
                        if (dim == 1) {
                            key = digits[0] == z;
                            for (size_t r = 0; r < s.rel.size(); ++r)
                                key = (key << 2) | (uint64_t(edge(s, r, digits[0], z)) << 1) | edge(s, r, z, digits[0]);
                        }
                        if (exact)
                            for (int i = 0; i < dim; ++i)
                                key = (key << bits) | s.color[t + (size_t(z) - digits[i]) * power[i]];
                        else {
                            Fingerprint f;
                            f.add(key);
                            for (int i = 0; i < dim; ++i)
                                f.add(s.color[t + (size_t(z) - digits[i]) * power[i]]);
                            key = f.a;
                        }
                        keys[z] = key;
                    }
                    std::sort(keys.begin(), keys.end());
                    Fingerprint f;
                    f.add(s.color[t]);
                    for (auto k : keys)
                        f.add(k);
                    fp[side][t] = f;
                }
                check_deadline();
            }

            size_t new_colors = canonicalize(fp[0], fp[1], sides[0].color, sides[1].color);
            ++result.rounds;
            bool stable = new_colors == colors;
            colors = new_colors;
            result.colors = colors;
            if (histograms_differ(sides[0].color, sides[1].color, colors)) {
                result.distinguished = true;
                return result;
            }
            if (stable)
                return result;
        }
    }

    auto wl_distinguishes(const ColoredGraph & g, const ColoredGraph & h, int dim, const WlOptions & options) -> bool
    {
        return wl_run(g, h, dim, options).distinguished;
    }

    auto wl_sweep(const ColoredGraph & g, const ColoredGraph & h, int dim_max, const WlOptions & options) -> std::optional<int>
    {
        if (dim_max < 1)
            throw UsageError("dim_max must be at least 1");
        for (int d = 1; d <= dim_max; ++d)
            if (wl_distinguishes(g, h, d, options))
                return d;
        return std::nullopt;
    }
}
