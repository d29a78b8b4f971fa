#include <pclab/algebra/linalg.hpp>
#include <pclab/errors.hpp>

#include <algorithm>

using std::optional;
using std::size_t;
using std::vector;

namespace pclab
{
    namespace
    {
        using Dense = vector<vector<Scalar>>;

        auto to_dense(const Matrix & m) -> Dense
        {
            Dense a(m.num_rows(), vector<Scalar>(m.num_cols(), Scalar::zero(m.field())));
            for (size_t i = 0; i < m.num_rows(); ++i)
                for (auto & [j, v] : m.row_entries(i))
                    a[i][j] = v;
            return a;
        }

        // Reduced row echelon form in place, pivoting only in columns [0, pivot_limit).
        // Returns the pivot column of each of the leading rows.
        auto gauss_jordan(Dense & a, size_t pivot_limit) -> vector<size_t>
        {
            vector<size_t> pivots;
            size_t r = 0;
            for (size_t c = 0; c < pivot_limit && r < a.size(); ++c) {
                size_t sel = r;
                while (sel < a.size() && a[sel][c].is_zero())
                    ++sel;
                if (sel == a.size())
                    continue;
                std::swap(a[r], a[sel]);

                Scalar inv = a[r][c].inverse();
                for (auto & x : a[r])
                    if (! x.is_zero())
                        x *= inv;

                vector<size_t> support;
                for (size_t j = 0; j < a[r].size(); ++j)
                    if (! a[r][j].is_zero())
                        support.push_back(j);

                for (size_t i = 0; i < a.size(); ++i) {
                    if (i == r || a[i][c].is_zero())
                        continue;
                    Scalar f = a[i][c];
                    for (size_t j : support)
                        a[i][j] -= f * a[r][j];
                }
                pivots.push_back(c);
                ++r;
            }
            return pivots;
        }

        auto require_rational(const Field & f, const char * op) -> void
        {
            if (! f.is_rational())
                throw UnsupportedField(std::string{ op } + " requires field Q (got " + f.to_string() + ")");
        }
    }

    auto rank(const Matrix & m) -> size_t
    {
        Dense a = to_dense(m);
        return gauss_jordan(a, m.num_cols()).size();
    }

    auto gauss_solve(const Matrix & m, const Vector & b) -> optional<Solution>
    {
        if (m.field() != b.field())
            throw UsageError("gauss_solve: field mismatch between matrix and right-hand side");
        if (! (m.rows() == b.indices()))
            throw UsageError("gauss_solve: right-hand side is not indexed by the matrix rows");

        const Field & f = m.field();
        size_t n = m.num_cols();
        Dense a = to_dense(m);
        for (size_t i = 0; i < a.size(); ++i)
            a[i].push_back(b.at(i));

        auto pivots = gauss_jordan(a, n);
        for (size_t i = pivots.size(); i < a.size(); ++i)
            if (! a[i][n].is_zero())
                return std::nullopt;

        Solution s{ Vector{ f, m.cols() }, {} };
        vector<bool> is_pivot(n, false);
        for (size_t r = 0; r < pivots.size(); ++r) {
            is_pivot[pivots[r]] = true;
            s.particular.set_at(pivots[r], a[r][n]);
        }
        for (size_t free = 0; free < n; ++free) {
            if (is_pivot[free])
                continue;
            Vector k{ f, m.cols() };
            k.set_at(free, Scalar::one(f));
            for (size_t r = 0; r < pivots.size(); ++r)
                if (! a[r][free].is_zero())
                    k.set_at(pivots[r], -a[r][free]);
            s.kernel_basis.push_back(std::move(k));
        }
        return s;
    }

    auto kernel_basis(const Matrix & m) -> vector<Vector>
    {
        return gauss_solve(m, Vector{ m.field(), m.rows() })->kernel_basis;
    }

    auto matrix_from_columns(const Field & f, const IndexList & rows, const vector<Vector> & columns) -> Matrix
    {
        Matrix result{ f, rows, IndexList::range(columns.size()) };
        for (size_t j = 0; j < columns.size(); ++j) {
            if (! (columns[j].indices() == rows))
                throw UsageError("column vector indexed differently from matrix rows");
            for (auto & [i, v] : columns[j].entries())
                result.set_at(i, j, v);
        }
        return result;
    }

    auto in_span(const vector<Vector> & generators, const Vector & b) -> bool
    {
        return gauss_solve(matrix_from_columns(b.field(), b.indices(), generators), b).has_value();
    }

    auto gram_solvable(const Matrix & m, const Vector & b) -> bool
    {
        require_rational(m.field(), "gram_solvable");
        if (m.field() != b.field() || ! (m.rows() == b.indices()))
            throw UsageError("gram_solvable: right-hand side does not match the matrix");

        Matrix big_b = m * m.transpose();
        size_t n = std::min(m.num_rows(), m.num_cols());
        vector<Vector> krylov;
        Vector current = b;
        for (size_t i = 1; i <= n + 1; ++i) {
            current = big_b.apply(current);
            krylov.push_back(current);
        }
        return in_span(krylov, b);
    }

    auto kernel_generators(const Matrix & m) -> Matrix
    {
        require_rational(m.field(), "kernel_generators");
        const Field & f = m.field();
        size_t n = m.num_cols();
        Matrix c = m.transpose() * m;

        // Unknowns (k, z) in Q^n x Q^n:  C k = 0  and  k + C z = e_j.
        Dense a(2 * n, vector<Scalar>(2 * n + n, Scalar::zero(f)));
        for (size_t i = 0; i < n; ++i)
            for (auto & [j, v] : c.row_entries(i)) {
                a[i][j] = v;
                a[n + i][n + j] = v;
            }
        for (size_t i = 0; i < n; ++i) {
            a[n + i][i] = Scalar::one(f);
            a[n + i][2 * n + i] = Scalar::one(f);
        }

        auto pivots = gauss_jordan(a, 2 * n);
        for (size_t r = pivots.size(); r < a.size(); ++r)
            for (size_t j = 0; j < n; ++j)
                if (! a[r][2 * n + j].is_zero())
                    throw std::logic_error("kernel_generators: projection system inconsistent");

        // k is uniquely determined since Q^n = ker(C) + im(C) is direct, so every k-coordinate is a pivot.
        Matrix s{ f, m.cols(), m.cols() };
        for (size_t r = 0; r < pivots.size(); ++r) {
            if (pivots[r] >= n)
                continue;
            for (size_t j = 0; j < n; ++j)
                if (! a[r][2 * n + j].is_zero())
                    s.set_at(pivots[r], j, a[r][2 * n + j]);
        }
        return s;
    }

    auto compress_image(const Matrix & n) -> Matrix
    {
        require_rational(n.field(), "compress_image");
        return n * n.transpose();
    }

    auto orbit_solve(const Matrix & m, const Vector & b, const vector<vector<Index>> & orbits) -> optional<Vector>
    {
        const Field & f = m.field();
        vector<int> seen(m.num_cols(), 0);
        for (auto & orbit : orbits)
            for (Index label : orbit) {
                auto pos = m.cols().position(label);
                if (! pos)
                    throw UsageError("orbit_solve: orbit element " + std::to_string(label) + " is not a column");
                ++seen[*pos];
            }
        for (size_t j = 0; j < seen.size(); ++j)
            if (seen[j] != 1)
                throw UsageError("orbit_solve: orbits do not partition the columns (column "
                        + std::to_string(m.cols()[j]) + " covered " + std::to_string(seen[j]) + " times)");

        Matrix t{ f, m.cols(), IndexList::range(orbits.size()) };
        for (size_t o = 0; o < orbits.size(); ++o)
            for (Index label : orbits[o])
                t.set(label, static_cast<Index>(o), Scalar::one(f));

        auto solution = gauss_solve(m * t, b);
        if (! solution)
            return std::nullopt;
        return t.apply(solution->particular);
    }
}
