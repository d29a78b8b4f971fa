#include <pclab/pc/monomial_table.hpp>
#include <pclab/errors.hpp>

#include <algorithm>
#include <bit>

using std::size_t;
using std::span;
using std::vector;

namespace pclab
{
    namespace
    {
        constexpr std::uint32_t pair_bits_limit = 4096;

        auto subset_of(span<const Var> small, span<const Var> big) -> bool
        {
            return std::includes(big.begin(), big.end(), small.begin(), small.end());
        }
    }

    DeadSet::DeadSet(std::uint32_t num_vars) :
        _num_vars(num_vars),
        _dead_var(num_vars + 1, 0),
        _use_pair_bits(num_vars <= pair_bits_limit),
        _by_max(num_vars + 1)
    {
        if (_use_pair_bits)
            _pair_bits.assign((std::size_t(num_vars + 1) * (num_vars + 1) + 63) / 64, 0);
    }

    auto DeadSet::pair_dead(Var a, Var b) const -> bool
    {
        std::size_t bit = std::size_t(a) * (_num_vars + 1) + b;
        return (_pair_bits[bit / 64] >> (bit % 64)) & 1;
    }

    auto DeadSet::add(const Monomial & m) -> void
    {
        if (m.degree() > 0 && m.vars().back() > _num_vars)
            throw UsageError("dead monomial uses an unknown variable");
        ++_count;
        auto & v = m.vars();
        if (v.empty())
            _constant = true;
        else if (v.size() == 1)
            _dead_var[v[0]] = 1;
        else if (v.size() == 2 && _use_pair_bits) {
            std::size_t bit = std::size_t(v[0]) * (_num_vars + 1) + v[1];
            _pair_bits[bit / 64] |= std::uint64_t{ 1 } << (bit % 64);
        }
        else
            _by_max[v.back()].emplace_back(v.begin(), v.end() - 1);
    }

    auto DeadSet::generators() const -> vector<Monomial>
    {
        vector<Monomial> result;
        if (_constant)
            result.push_back(Monomial{});
        for (Var x = 1; x <= _num_vars; ++x)
            if (_dead_var[x])
                result.push_back(Monomial{ x });
        if (_use_pair_bits)
            for (Var a = 1; a <= _num_vars; ++a)
                for (Var b = a + 1; b <= _num_vars; ++b)
                    if (pair_dead(a, b))
                        result.push_back(Monomial{ a, b });
        for (Var x = 1; x <= _num_vars; ++x)
            for (auto & g : _by_max[x]) {
                auto vars = g;
                vars.push_back(x);
                result.push_back(Monomial{ std::move(vars) });
            }
        std::sort(result.begin(), result.end());
        return result;
    }

    auto DeadSet::extension_dead(span<const Var> prefix, Var x) const -> bool
    {
        if (_constant || _dead_var[x])
            return true;
        if (_use_pair_bits)
            for (Var y : prefix)
                if (pair_dead(y, x))
                    return true;
        for (auto & g : _by_max[x])
            if (g.size() <= prefix.size() && subset_of(g, prefix))
                return true;
        return false;
    }

    auto DeadSet::is_dead(span<const Var> m) const -> bool
    {
        for (size_t i = 0; i <= m.size(); ++i) {
            if (i == m.size())
                return _constant;
            if (extension_dead(m.subspan(0, i), m[i]))
                return true;
        }
        return false;
    }

    MonomialTable::MonomialTable(std::uint32_t num_vars, int k, const DeadSet & dead, size_t size_limit) :
        _num_vars(num_vars),
        _k(k),
        _stride(std::max(k, 1))
    {
        if (k < 0 || k > 255)
            throw UsageError("degree bound out of range");

        _degree.push_back(0);
        _flat.resize(_stride, 0);
        _degree_begin.push_back(0);

        vector<Var> buffer;
        for (int d = 1; d <= k; ++d) {
            std::uint32_t begin = _degree_begin[d - 1], end = static_cast<std::uint32_t>(_degree.size());
            _degree_begin.push_back(end);
            for (std::uint32_t col = begin; col < end; ++col) {
                auto prefix_span = vars(col);
                buffer.assign(prefix_span.begin(), prefix_span.end());
                Var first = buffer.empty() ? 1 : buffer.back() + 1;
                for (Var x = first; x <= num_vars; ++x) {
                    if (dead.extension_dead(buffer, x))
                        continue;
                    if (_degree.size() >= size_limit)
                        throw ResourceLimit("more than " + std::to_string(size_limit) + " monomials at degree "
                                + std::to_string(k));
                    _degree.push_back(static_cast<std::uint8_t>(d));
                    size_t base = _flat.size();
                    _flat.resize(base + _stride, 0);
                    std::copy(buffer.begin(), buffer.end(), _flat.begin() + base);
                    _flat[base + buffer.size()] = x;
                }
            }
        }
        for (int d = static_cast<int>(_degree_begin.size()); d <= k + 1; ++d)
            _degree_begin.push_back(static_cast<std::uint32_t>(_degree.size()));

        size_t cap = std::bit_ceil(std::max<size_t>(16, 2 * _degree.size()));
        _slots.assign(cap, 0);
        _mask = cap - 1;
        for (std::uint32_t col = 0; col < _degree.size(); ++col)
            insert_slot(col);
    }

    auto MonomialTable::monomial(std::uint32_t col) const -> Monomial
    {
        auto v = vars(col);
        return Monomial{ vector<Var>(v.begin(), v.end()) };
    }

    auto MonomialTable::hash(span<const Var> m) -> std::uint64_t
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ m.size();
        for (Var v : m) {
            h ^= v;
            h *= 0xff51afd7ed558ccdull;
            h ^= h >> 32;
        }
        return h;
    }

    auto MonomialTable::insert_slot(std::uint32_t col) -> void
    {
        auto h = hash(vars(col)) & _mask;
        while (_slots[h] != 0)
            h = (h + 1) & _mask;
        _slots[h] = col + 1;
    }

    auto MonomialTable::find(span<const Var> m) const -> std::uint32_t
    {
        if (static_cast<int>(m.size()) > _k)
            return absent;
        auto h = hash(m) & _mask;
        while (_slots[h] != 0) {
            std::uint32_t col = _slots[h] - 1;
            auto v = vars(col);
            if (v.size() == m.size() && std::equal(v.begin(), v.end(), m.begin()))
                return col;
            h = (h + 1) & _mask;
        }
        return absent;
    }

    auto MonomialTable::find_product(std::uint32_t col, Var x) const -> std::uint32_t
    {
        auto v = vars(col);
        auto pos = std::lower_bound(v.begin(), v.end(), x);
        if (pos != v.end() && *pos == x)
            return col;
        if (static_cast<int>(v.size()) >= _k)
            return absent;
        Var buffer[256];
        size_t i = 0;
        for (auto it = v.begin(); it != pos; ++it)
            buffer[i++] = *it;
        buffer[i++] = x;
        for (auto it = pos; it != v.end(); ++it)
            buffer[i++] = *it;
        return find(span<const Var>{ buffer, i });
    }
}
