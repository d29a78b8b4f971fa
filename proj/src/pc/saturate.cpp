#include <pclab/pc/saturate.hpp>
#include <pclab/pc/monomial_table.hpp>
#include <pclab/algebra/linalg.hpp>
#include <pclab/errors.hpp>

#include <algorithm>

using std::size_t;
using std::uint32_t;
using std::vector;

namespace pclab
{
    auto engine_name(Engine e) -> std::string
    {
        return e == Engine::monpc ? "monpc" : "pc";
    }

    auto parse_engine(const std::string & name) -> Engine
    {
        if (name == "monpc")
            return Engine::monpc;
        if (name == "pc")
            return Engine::pc;
        throw UsageError("unknown engine '" + name + "' (expected monpc or pc)");
    }

    namespace
    {
        struct QOps
        {
            using C = Rational;

            auto from_scalar(const Scalar & s) const -> C { return s.rational(); }
            auto to_scalar(const C & c) const -> Scalar { return Scalar{ Field::rationals(), c }; }
            static auto is_zero(const C & c) -> bool { return c.is_zero(); }
            static auto is_one(const C & c) -> bool { return c.is_one(); }
            static auto inv(const C & c) -> C { return c.inverse(); }
            static auto mul(const C & a, const C & b) -> C { return a * b; }
            // acc - f * x
            static auto sub_mul(const C & acc, const C & f, const C & x) -> C
            {
                C r = acc;
                r.add_product(-f, x);
                return r;
            }
            static auto neg_mul(const C & f, const C & x) -> C { return -(f * x); }
            static auto add(const C & a, const C & b) -> C { return a + b; }
        };

        struct FpOps
        {
            using C = uint32_t;
            ModArith m;

            auto from_scalar(const Scalar & s) const -> C { return s.residue(); }
            auto to_scalar(const C & c) const -> Scalar { return Scalar::from_residue(Field::prime(m.p), c); }
            static auto is_zero(C c) -> bool { return c == 0; }
            static auto is_one(C c) -> bool { return c == 1; }
            auto inv(C c) const -> C { return m.inv(c); }
            auto mul(C a, C b) const -> C { return m.mul(a, b); }
            auto sub_mul(C acc, C f, C x) const -> C { return m.sub(acc, m.mul(f, x)); }
            auto neg_mul(C f, C x) const -> C { return m.neg(m.mul(f, x)); }
            auto add(C a, C b) const -> C { return m.add(a, b); }
        };

        template <typename C_>
        struct Term
        {
            uint32_t col;
            C_ c;
        };

        // Terms sorted by column, descending, so the leading term comes first.
        template <typename C_>
        using Row = vector<Term<C_>>;
    }

    namespace detail
    {
        class BasisData
        {
            public:
                virtual ~BasisData() = default;
                virtual auto field() const -> Field = 0;
                virtual auto degree_bound() const -> int = 0;
                virtual auto num_vars() const -> uint32_t = 0;
                virtual auto dimension() const -> size_t = 0;
                virtual auto vector_at(size_t i) const -> Polynomial = 0;
                virtual auto leading(size_t i) const -> Monomial = 0;
                virtual auto zero_monomials() const -> vector<Monomial> = 0;
                virtual auto contains(const Polynomial & p) const -> bool = 0;
        };
    }

    namespace
    {
        template <typename Ops>
        class EchelonState
        {
            public:
                using C = typename Ops::C;
                using R = Row<C>;

                Ops ops;
                Field field;
                int k;
                std::shared_ptr<const MonomialTable> table;
                vector<Monomial> dead_generators;
                vector<R> rows;
                vector<uint32_t> pivot_of;
                uint32_t low_limit = 0;
                vector<vector<uint32_t>> occurrences;
                bool refuted = false;
                bool track_new_low_rows = false;
                vector<uint32_t> derived_monomials;
                vector<R> new_low_rows;
                size_t inserted = 0;
                std::optional<std::chrono::steady_clock::time_point> deadline;

                EchelonState(Ops o, Field f, int k_, std::shared_ptr<const MonomialTable> t, vector<Monomial> dead) :
                    ops(o),
                    field(f),
                    k(k_),
                    table(std::move(t)),
                    dead_generators(std::move(dead)),
                    pivot_of(table->size(), MonomialTable::absent),
                    low_limit(table->degree_begin(k_)),
                    occurrences(low_limit)
                {
                }

                auto check_deadline() -> void
                {
                    if (deadline && (inserted & 1023) == 0 && std::chrono::steady_clock::now() > *deadline)
                        throw Timeout{};
                }

                // out = r - f * p, both sorted descending.
                auto axpy(const R & r, const C & f, const R & p, R & out) const -> void
                {
                    out.clear();
                    out.reserve(r.size() + p.size());
                    size_t i = 0, j = 0;
                    while (i < r.size() || j < p.size()) {
                        if (j == p.size() || (i < r.size() && r[i].col > p[j].col))
                            out.push_back(r[i++]);
                        else if (i == r.size() || p[j].col > r[i].col) {
                            out.push_back({ p[j].col, ops.neg_mul(f, p[j].c) });
                            ++j;
                        }
                        else {
                            C c = ops.sub_mul(r[i].c, f, p[j].c);
                            if (! Ops::is_zero(c))
                                out.push_back({ r[i].col, std::move(c) });
                            ++i;
                            ++j;
                        }
                    }
                }

                auto head_reduce(R & r) const -> void
                {
                    R scratch;
                    while (! r.empty()) {
                        uint32_t piv = pivot_of[r[0].col];
                        if (piv == MonomialTable::absent)
                            return;
                        C f = r[0].c;
                        axpy(r, f, rows[piv], scratch);
                        std::swap(r, scratch);
                    }
                }

                static auto coefficient_of(const R & r, uint32_t col) -> const C *
                {
                    auto it = std::lower_bound(r.begin(), r.end(), col,
                            [] (const Term<C> & t, uint32_t c) { return t.col > c; });
                    if (it != r.end() && it->col == col)
                        return &it->c;
                    return nullptr;
                }

                // Sort descending and combine duplicate columns.
                auto canonicalize(R & r) const -> void
                {
                    std::sort(r.begin(), r.end(), [] (const Term<C> & a, const Term<C> & b) { return a.col > b.col; });
                    size_t out = 0;
                    for (size_t i = 0; i < r.size();) {
                        uint32_t col = r[i].col;
                        C c = std::move(r[i].c);
                        size_t j = i + 1;
                        for (; j < r.size() && r[j].col == col; ++j)
                            c = ops.add(c, r[j].c);
                        if (! Ops::is_zero(c))
                            r[out++] = { col, std::move(c) };
                        i = j;
                    }
                    r.resize(out);
                }

                // Returns true if the span grew.
                auto insert(R r) -> bool
                {
                    ++inserted;
                    check_deadline();
                    head_reduce(r);
                    if (r.empty())
                        return false;

                    if (! Ops::is_one(r[0].c)) {
                        C inv = ops.inv(r[0].c);
                        for (auto & t : r)
                            t.c = ops.mul(t.c, inv);
                    }

                    uint32_t lead = r[0].col;
                    uint32_t id = static_cast<uint32_t>(rows.size());

                    if (lead < low_limit) {
                        // Tail reduction against sub-degree pivots, which are themselves fully reduced.
                        R scratch;
                        for (size_t i = 1; i < r.size();) {
                            uint32_t piv = pivot_of[r[i].col];
                            if (piv == MonomialTable::absent) {
                                ++i;
                                continue;
                            }
                            C f = r[i].c;
                            axpy(r, f, rows[piv], scratch);
                            std::swap(r, scratch);
                        }

                        // Back substitution into the other sub-degree rows that mention the new pivot.
                        auto & occ = occurrences[lead];
                        for (uint32_t other : occ) {
                            auto * f = coefficient_of(rows[other], lead);
                            if (! f)
                                continue;
                            C factor = *f;
                            R updated;
                            axpy(rows[other], factor, r, updated);
                            rows[other] = std::move(updated);
                            for (size_t i = 1; i < r.size(); ++i)
                                occurrences[r[i].col].push_back(other);
                            if (rows[other].size() == 1)
                                derived_monomials.push_back(rows[other][0].col);
                        }
                        vector<uint32_t>{}.swap(occ);

                        for (size_t i = 1; i < r.size(); ++i)
                            occurrences[r[i].col].push_back(id);
                        if (r.size() == 1)
                            derived_monomials.push_back(lead);
                        if (track_new_low_rows)
                            new_low_rows.push_back(r);
                    }

                    pivot_of[lead] = id;
                    rows.push_back(std::move(r));
                    if (lead == 0)
                        refuted = true;
                    return true;
                }

                auto contains(R r) const -> bool
                {
                    head_reduce(r);
                    return r.empty();
                }

                auto to_polynomial(const R & r) const -> Polynomial
                {
                    Polynomial p{ field };
                    for (auto & t : r)
                        p.add_term(table->monomial(t.col), ops.to_scalar(t.c));
                    return p;
                }

                // Row for a polynomial whose terms all have degree <= k (dead terms dropped).
                auto from_polynomial(const Polynomial & p) const -> std::optional<R>
                {
                    R r;
                    for (auto & [m, c] : p.terms()) {
                        if (m.degree() > k)
                            return std::nullopt;
                        uint32_t col = table->find(m.vars());
                        if (col != MonomialTable::absent)
                            r.push_back({ col, ops.from_scalar(c) });
                    }
                    canonicalize(r);
                    return r;
                }
        };

        template <typename Ops>
        class BasisImpl : public detail::BasisData
        {
            public:
                explicit BasisImpl(EchelonState<Ops> && e) : _e(std::move(e)) {}

                auto field() const -> Field override { return _e.field; }
                auto degree_bound() const -> int override { return _e.k; }
                auto num_vars() const -> uint32_t override { return _e.table->num_vars(); }
                auto dimension() const -> size_t override { return _e.rows.size(); }
                auto vector_at(size_t i) const -> Polynomial override { return _e.to_polynomial(_e.rows.at(i)); }
                auto leading(size_t i) const -> Monomial override { return _e.table->monomial(_e.rows.at(i)[0].col); }
                auto zero_monomials() const -> vector<Monomial> override { return _e.dead_generators; }
                auto contains(const Polynomial & p) const -> bool override
                {
                    if (p.field() != _e.field)
                        throw UsageError("field mismatch in span membership test");
                    auto r = _e.from_polynomial(p);
                    return r && _e.contains(std::move(*r));
                }

            private:
                EchelonState<Ops> _e;
        };

        struct Prepared
        {
            std::shared_ptr<const MonomialTable> table;
            vector<Monomial> dead;
            vector<const Polynomial *> lifted_axioms;
            bool constant_axiom = false;
        };

        auto prepare(const PolySystem & p, int k, const SaturateOptions & options) -> Prepared
        {
            if (k < 1)
                throw UsageError("degree bound must be at least 1");
            if (! p.booleanity)
                throw UsageError("saturation engines require Boolean (multilinear) systems");
            p.validate();

            Prepared result;
            DeadSet dead{ p.num_vars };
            for (auto & a : p.axioms) {
                if (a.degree() > k)
                    throw DegreeOverflow("axiom " + a.to_string() + " has degree " + std::to_string(a.degree())
                            + " above the bound " + std::to_string(k));
                if (a.is_zero())
                    continue;
                if (a.terms().size() == 1) {
                    dead.add(a.terms().begin()->first);
                    if (a.degree() == 0)
                        result.constant_axiom = true;
                }
                else
                    result.lifted_axioms.push_back(&a);
            }
            result.dead = dead.generators();
            result.table = std::make_shared<MonomialTable>(p.num_vars, k, dead, options.monomial_limit);
            return result;
        }

        template <typename Ops>
        auto lift_axioms(EchelonState<Ops> & e, const Prepared & prep, bool stop_on_refutation) -> void
        {
            using C = typename Ops::C;
            auto & table = *e.table;
            int k = e.k;
            vector<std::uint8_t> in_axiom(table.num_vars() + 1, 0);
            vector<Var> buffer;

            for (auto * a : prep.lifted_axioms) {
                vector<std::pair<vector<Var>, C>> terms;
                for (auto & [m, c] : a->terms())
                    terms.emplace_back(m.vars(), e.ops.from_scalar(c));
                int deg = a->degree();
                for (auto & [m, c] : a->terms())
                    for (Var v : m.vars())
                        in_axiom[v] = 1;

                uint32_t end = table.degree_begin(k + 1);
                for (uint32_t col = 0; col < end; ++col) {
                    auto mv = table.vars(col);
                    if (table.degree(col) + deg > k) {
                        bool overlap = false;
                        for (Var v : mv)
                            if (in_axiom[v]) {
                                overlap = true;
                                break;
                            }
                        if (! overlap)
                            continue;
                    }

                    Row<C> row;
                    bool fits = true;
                    for (auto & [tv, c] : terms) {
                        buffer.clear();
                        std::set_union(mv.begin(), mv.end(), tv.begin(), tv.end(), std::back_inserter(buffer));
                        if (static_cast<int>(buffer.size()) > k) {
                            fits = false;
                            break;
                        }
                        uint32_t target = table.find(buffer);
                        if (target != MonomialTable::absent)
                            row.push_back({ target, c });
                    }
                    if (! fits)
                        continue;
                    e.canonicalize(row);
                    e.insert(std::move(row));
                    if (stop_on_refutation && e.refuted)
                        return;
                }

                for (auto & [m, c] : a->terms())
                    for (Var v : m.vars())
                        in_axiom[v] = 0;
            }
        }

        template <typename Ops>
        auto finish(EchelonState<Ops> && e, SaturateStats stats, std::chrono::steady_clock::time_point start) -> SaturateResult
        {
            stats.live_monomials = e.table->size();
            stats.dead_generators = e.dead_generators.size();
            stats.inserted = e.inserted;
            stats.basis_dimension = e.rows.size();
            stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            bool refuted = e.refuted;
            return SaturateResult{ refuted, Basis{ std::make_shared<BasisImpl<Ops>>(std::move(e)) }, stats };
        }

        template <typename Ops>
        auto make_engine(Ops ops, const PolySystem & p, int k, const Prepared & prep, const SaturateOptions & options) -> EchelonState<Ops>
        {
            EchelonState<Ops> e{ ops, p.field, k, prep.table, prep.dead };
            e.deadline = options.deadline;
            if (prep.constant_axiom)
                e.insert(Row<typename Ops::C>{ { 0, e.ops.from_scalar(Scalar::one(p.field)) } });
            return e;
        }

        template <typename Ops>
        auto run_monpc(Ops ops, const PolySystem & p, int k, const SaturateOptions & options) -> SaturateResult
        {
            auto start = std::chrono::steady_clock::now();
            auto prep = prepare(p, k, options);
            auto e = make_engine(ops, p, k, prep, options);
            SaturateStats stats;

            if (! (e.refuted && options.stop_on_refutation))
                lift_axioms(e, prep, options.stop_on_refutation);
            stats.dimension_per_round.push_back(e.rows.size());

            // Monomials of degree < k that are multiples of an axiom monomial are dead and would only
            // lift to dead monomials, so the worklist of derived monomials covers Fig. 1's loop.
            vector<std::uint8_t> lifted(e.low_limit, 0);
            while (! e.derived_monomials.empty() && ! (e.refuted && options.stop_on_refutation)) {
                ++stats.rounds;
                vector<uint32_t> generation;
                std::swap(generation, e.derived_monomials);
                for (uint32_t col : generation) {
                    if (lifted[col])
                        continue;
                    lifted[col] = 1;
                    for (Var x = 1; x <= p.num_vars; ++x) {
                        uint32_t target = e.table->find_product(col, x);
                        if (target == MonomialTable::absent || target == col)
                            continue;
                        e.insert(Row<typename Ops::C>{ { target, e.ops.from_scalar(Scalar::one(p.field)) } });
                        if (e.refuted && options.stop_on_refutation)
                            break;
                    }
                    if (e.refuted && options.stop_on_refutation)
                        break;
                }
                stats.dimension_per_round.push_back(e.rows.size());
            }
            return finish(std::move(e), stats, start);
        }

        template <typename Ops>
        auto lift_row(EchelonState<Ops> & e, const Row<typename Ops::C> & r, Var x) -> Row<typename Ops::C>
        {
            Row<typename Ops::C> lifted;
            lifted.reserve(r.size());
            for (auto & t : r) {
                uint32_t target = e.table->find_product(t.col, x);
                if (target != MonomialTable::absent)
                    lifted.push_back({ target, t.c });
            }
            e.canonicalize(lifted);
            return lifted;
        }

        template <typename Ops>
        auto run_pc_echelon(Ops ops, const PolySystem & p, int k, const SaturateOptions & options) -> SaturateResult
        {
            auto start = std::chrono::steady_clock::now();
            auto prep = prepare(p, k, options);
            auto e = make_engine(ops, p, k, prep, options);
            e.track_new_low_rows = true;
            SaturateStats stats;

            if (! (e.refuted && options.stop_on_refutation))
                lift_axioms(e, prep, options.stop_on_refutation);
            stats.dimension_per_round.push_back(e.rows.size());

            // Lifting is linear, so lifting each sub-degree row once, as it was when it entered the
            // basis, lifts the whole sub-degree space.
            while (! e.new_low_rows.empty() && ! (e.refuted && options.stop_on_refutation)) {
                ++stats.rounds;
                vector<Row<typename Ops::C>> generation;
                std::swap(generation, e.new_low_rows);
                for (auto & r : generation) {
                    for (Var x = 1; x <= p.num_vars; ++x) {
                        e.insert(lift_row(e, r, x));
                        if (e.refuted && options.stop_on_refutation)
                            break;
                    }
                    if (e.refuted && options.stop_on_refutation)
                        break;
                }
                stats.dimension_per_round.push_back(e.rows.size());
            }
            return finish(std::move(e), stats, start);
        }

        // Sub-degree space via the linear system: unknowns x (one per basis vector) and p (one per
        // monomial), equations  sum_i x_i b_i - p = 0  and  p(m) = 0 for deg m = k.  The projection
        // of the solution space onto p is compressed with compress_image.
        auto subdegree_generators(EchelonState<QOps> & e) -> vector<Row<Rational>>
        {
            const Field q = Field::rationals();
            size_t nb = e.rows.size(), nm = e.table->size();
            uint32_t top_begin = e.table->degree_begin(e.k);
            size_t n_eq = nm + (nm - top_begin);

            Matrix system{ q, IndexList::range(n_eq), IndexList::range(nb + nm) };
            for (size_t i = 0; i < nb; ++i)
                for (auto & t : e.rows[i])
                    system.set_at(t.col, i, Scalar{ q, t.c });
            for (size_t m = 0; m < nm; ++m)
                system.set_at(m, nb + m, Scalar{ q, -1 });
            for (size_t m = top_begin; m < nm; ++m)
                system.set_at(nm + (m - top_begin), nb + m, Scalar::one(q));

            auto kernel = kernel_basis(system);
            Matrix n{ q, IndexList::range(nm), IndexList::range(kernel.size()) };
            for (size_t j = 0; j < kernel.size(); ++j)
                for (auto & [pos, v] : kernel[j].entries())
                    if (pos >= nb)
                        n.set_at(pos - nb, j, v);

            Matrix compressed = compress_image(n);
            vector<Row<Rational>> result;
            for (size_t j = 0; j < nm; ++j) {
                Row<Rational> r;
                for (size_t i = 0; i < nm; ++i) {
                    auto s = compressed.at(i, j);
                    if (! s.is_zero())
                        r.push_back({ static_cast<uint32_t>(i), s.rational() });
                }
                if (! r.empty()) {
                    e.canonicalize(r);
                    result.push_back(std::move(r));
                }
            }
            return result;
        }

        auto run_pc_linear_system(const PolySystem & p, int k, const SaturateOptions & options) -> SaturateResult
        {
            auto start = std::chrono::steady_clock::now();
            auto prep = prepare(p, k, options);
            auto e = make_engine(QOps{}, p, k, prep, options);
            SaturateStats stats;

            if (! (e.refuted && options.stop_on_refutation))
                lift_axioms(e, prep, options.stop_on_refutation);
            stats.dimension_per_round.push_back(e.rows.size());

            while (! (e.refuted && options.stop_on_refutation)) {
                ++stats.rounds;
                size_t before = e.rows.size();
                auto generators = subdegree_generators(e);
                for (auto & r : generators) {
                    for (Var x = 1; x <= p.num_vars; ++x) {
                        e.insert(lift_row(e, r, x));
                        if (e.refuted && options.stop_on_refutation)
                            break;
                    }
                    if (e.refuted && options.stop_on_refutation)
                        break;
                }
                stats.dimension_per_round.push_back(e.rows.size());
                if (e.rows.size() == before)
                    break;
            }
            return finish(std::move(e), stats, start);
        }
    }

    auto Basis::field() const -> Field { return _data->field(); }
    auto Basis::degree_bound() const -> int { return _data->degree_bound(); }
    auto Basis::num_vars() const -> uint32_t { return _data->num_vars(); }
    auto Basis::dimension() const -> size_t { return _data ? _data->dimension() : 0; }
    auto Basis::vector(size_t i) const -> Polynomial { return _data->vector_at(i); }
    auto Basis::leading_monomial(size_t i) const -> Monomial { return _data->leading(i); }
    auto Basis::zero_monomials() const -> std::vector<Monomial> { return _data->zero_monomials(); }
    auto Basis::contains(const Polynomial & p) const -> bool { return _data->contains(p); }

    auto Basis::vectors() const -> std::vector<Polynomial>
    {
        std::vector<Polynomial> result;
        for (size_t i = 0; i < dimension(); ++i)
            result.push_back(vector(i));
        return result;
    }

    auto Basis::contains_one() const -> bool
    {
        return contains(Polynomial::constant(field(), 1));
    }

    auto monpc_saturate(const PolySystem & p, int k, const SaturateOptions & options) -> SaturateResult
    {
        if (p.field.is_rational())
            return run_monpc(QOps{}, p, k, options);
        return run_monpc(FpOps{ ModArith{ p.field.characteristic() } }, p, k, options);
    }

    auto pc_saturate(const PolySystem & p, int k, const SaturateOptions & options) -> SaturateResult
    {
        auto method = options.subdegree;
        if (method == SubdegreeMethod::automatic)
            method = p.field.is_rational() ? SubdegreeMethod::linear_system : SubdegreeMethod::echelon;
        if (method == SubdegreeMethod::linear_system) {
            if (! p.field.is_rational())
                throw UnsupportedField("the linear-system sub-degree extraction relies on compress_image and needs field Q");
            return run_pc_linear_system(p, k, options);
        }
        if (p.field.is_rational())
            return run_pc_echelon(QOps{}, p, k, options);
        return run_pc_echelon(FpOps{ ModArith{ p.field.characteristic() } }, p, k, options);
    }

    auto saturate(pclab::Engine engine, const PolySystem & p, int k, const SaturateOptions & options) -> SaturateResult
    {
        return engine == pclab::Engine::monpc ? monpc_saturate(p, k, options) : pc_saturate(p, k, options);
    }

    auto min_refutation_degree(const PolySystem & p, pclab::Engine engine, int k_max, const SaturateOptions & options)
        -> std::optional<int>
    {
        if (k_max < 1)
            throw UsageError("k_max must be at least 1");
        SaturateOptions opts = options;
        opts.stop_on_refutation = true;
        for (int k = std::max(1, p.max_degree()); k <= k_max; ++k)
            if (saturate(engine, p, k, opts).refuted)
                return k;
        return std::nullopt;
    }
}
