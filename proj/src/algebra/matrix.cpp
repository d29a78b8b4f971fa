#include <pclab/algebra/matrix.hpp>
#include <pclab/errors.hpp>

#include <algorithm>
#include <numeric>

using std::size_t;
using std::vector;

namespace pclab
{
    IndexList::IndexList(vector<Index> labels) :
        _labels(std::move(labels)),
        _pos(std::make_shared<std::unordered_map<Index, size_t>>())
    {
        _pos->reserve(_labels.size());
        for (size_t i = 0; i < _labels.size(); ++i)
            if (! _pos->emplace(_labels[i], i).second)
                throw UsageError("duplicate index " + std::to_string(_labels[i]) + " in index list");
    }

    auto IndexList::range(size_t n) -> IndexList
    {
        vector<Index> labels(n);
        std::iota(labels.begin(), labels.end(), Index{ 0 });
        return IndexList{ std::move(labels) };
    }

    auto IndexList::position(Index label) const -> std::optional<size_t>
    {
        if (! _pos)
            return std::nullopt;
        auto it = _pos->find(label);
        if (it == _pos->end())
            return std::nullopt;
        return it->second;
    }

    auto IndexList::position_or_throw(Index label) const -> size_t
    {
        auto p = position(label);
        if (! p)
            throw UsageError("index " + std::to_string(label) + " not in index list");
        return *p;
    }

    Vector::Vector(const Field & f, IndexList indices) :
        _field(f),
        _indices(std::move(indices))
    {
    }

    auto Vector::from_values(const Field & f, const vector<long long> & values) -> Vector
    {
        Vector v{ f, IndexList::range(values.size()) };
        for (size_t i = 0; i < values.size(); ++i)
            v.set_at(i, Scalar{ f, values[i] });
        return v;
    }

    auto Vector::from_scalars(const Field & f, IndexList indices, const vector<Scalar> & values) -> Vector
    {
        if (values.size() != indices.size())
            throw UsageError("vector value count does not match index count");
        Vector v{ f, std::move(indices) };
        for (size_t i = 0; i < values.size(); ++i)
            v.set_at(i, values[i]);
        return v;
    }

    auto Vector::get(Index label) const -> Scalar
    {
        return at(_indices.position_or_throw(label));
    }

    auto Vector::set(Index label, const Scalar & value) -> void
    {
        set_at(_indices.position_or_throw(label), value);
    }

    auto Vector::at(size_t pos) const -> Scalar
    {
        auto it = std::lower_bound(_entries.begin(), _entries.end(), pos,
                [] (const auto & e, size_t p) { return e.first < p; });
        if (it != _entries.end() && it->first == pos)
            return it->second;
        return Scalar::zero(_field);
    }

    auto Vector::set_at(size_t pos, const Scalar & value) -> void
    {
        if (pos >= _indices.size())
            throw UsageError("vector position out of range");
        if (value.field() != _field)
            throw UsageError("field mismatch in vector entry");
        auto it = std::lower_bound(_entries.begin(), _entries.end(), pos,
                [] (const auto & e, size_t p) { return e.first < p; });
        bool present = it != _entries.end() && it->first == pos;
        if (value.is_zero()) {
            if (present)
                _entries.erase(it);
        }
        else if (present)
            it->second = value;
        else
            _entries.insert(it, { static_cast<std::uint32_t>(pos), value });
    }

    auto Vector::dense() const -> vector<Scalar>
    {
        vector<Scalar> result(size(), Scalar::zero(_field));
        for (auto & [p, v] : _entries)
            result[p] = v;
        return result;
    }

    auto operator== (const Vector & a, const Vector & b) -> bool
    {
        return a._field == b._field && a._indices == b._indices && a._entries == b._entries;
    }

    Matrix::Matrix(const Field & f, IndexList rows, IndexList cols) :
        _field(f),
        _rows(std::move(rows)),
        _cols(std::move(cols)),
        _sparse(_rows.size())
    {
    }

    Matrix::Matrix(const Matrix & other) :
        _field(other._field),
        _rows(other._rows),
        _cols(other._cols),
        _sparse(other._sparse),
        _dense(other._dense ? std::make_unique<vector<Scalar>>(*other._dense) : nullptr),
        _nnz(other._nnz)
    {
    }

    auto Matrix::operator= (const Matrix & other) -> Matrix &
    {
        if (this != &other) {
            Matrix copy{ other };
            *this = std::move(copy);
        }
        return *this;
    }

    auto Matrix::from_values(const Field & f, const vector<vector<long long>> & values) -> Matrix
    {
        size_t cols = values.empty() ? 0 : values[0].size();
        Matrix m{ f, IndexList::range(values.size()), IndexList::range(cols) };
        for (size_t i = 0; i < values.size(); ++i) {
            if (values[i].size() != cols)
                throw UsageError("ragged matrix literal");
            for (size_t j = 0; j < cols; ++j)
                m.set_at(i, j, Scalar{ f, values[i][j] });
        }
        return m;
    }

    auto Matrix::identity(const Field & f, IndexList labels) -> Matrix
    {
        Matrix m{ f, labels, labels };
        for (size_t i = 0; i < labels.size(); ++i)
            m.set_at(i, i, Scalar::one(f));
        return m;
    }

    auto Matrix::get(Index row, Index col) const -> Scalar
    {
        return at(_rows.position_or_throw(row), _cols.position_or_throw(col));
    }

    auto Matrix::set(Index row, Index col, const Scalar & value) -> void
    {
        set_at(_rows.position_or_throw(row), _cols.position_or_throw(col), value);
    }

    auto Matrix::at(size_t i, size_t j) const -> Scalar
    {
        if (i >= num_rows() || j >= num_cols())
            throw UsageError("matrix position out of range");
        if (_dense)
            return (*_dense)[i * num_cols() + j];
        auto & row = _sparse[i];
        auto it = std::lower_bound(row.begin(), row.end(), j,
                [] (const auto & e, size_t p) { return e.first < p; });
        if (it != row.end() && it->first == j)
            return it->second;
        return Scalar::zero(_field);
    }

    auto Matrix::set_at(size_t i, size_t j, const Scalar & value) -> void
    {
        if (i >= num_rows() || j >= num_cols())
            throw UsageError("matrix position out of range");
        if (value.field() != _field)
            throw UsageError("field mismatch in matrix entry");

        if (_dense) {
            auto & slot = (*_dense)[i * num_cols() + j];
            _nnz += (slot.is_zero() ? 1 : 0) - (value.is_zero() ? 1 : 0);
            slot = value;
            return;
        }

        auto & row = _sparse[i];
        auto it = std::lower_bound(row.begin(), row.end(), j,
                [] (const auto & e, size_t p) { return e.first < p; });
        bool present = it != row.end() && it->first == j;
        if (value.is_zero()) {
            if (present) {
                row.erase(it);
                --_nnz;
            }
        }
        else if (present)
            it->second = value;
        else {
            row.insert(it, { static_cast<std::uint32_t>(j), value });
            ++_nnz;
            maybe_densify();
        }
    }

    auto Matrix::maybe_densify() -> void
    {
        size_t cells = num_rows() * num_cols();
        if (_dense || cells < 64 || 2 * _nnz <= cells)
            return;
        auto dense = std::make_unique<vector<Scalar>>(cells, Scalar::zero(_field));
        for (size_t i = 0; i < num_rows(); ++i)
            for (auto & [j, v] : _sparse[i])
                (*dense)[i * num_cols() + j] = v;
        _dense = std::move(dense);
        _sparse.clear();
        _sparse.shrink_to_fit();
    }

    auto Matrix::row_entries(size_t i) const -> SparseRow
    {
        if (! _dense)
            return _sparse[i];
        SparseRow result;
        for (size_t j = 0; j < num_cols(); ++j) {
            auto & v = (*_dense)[i * num_cols() + j];
            if (! v.is_zero())
                result.emplace_back(static_cast<std::uint32_t>(j), v);
        }
        return result;
    }

    auto Matrix::column(size_t j) const -> Vector
    {
        Vector v{ _field, _rows };
        for (size_t i = 0; i < num_rows(); ++i) {
            auto s = at(i, j);
            if (! s.is_zero())
                v.set_at(i, s);
        }
        return v;
    }

    auto Matrix::transpose() const -> Matrix
    {
        Matrix t{ _field, _cols, _rows };
        for (size_t i = 0; i < num_rows(); ++i)
            for (auto & [j, v] : row_entries(i))
                t.set_at(j, i, v);
        return t;
    }

    auto Matrix::operator* (const Matrix & other) const -> Matrix
    {
        if (_field != other._field)
            throw UsageError("field mismatch in matrix product");
        if (! (_cols == other._rows))
            throw UsageError("index mismatch in matrix product");

        vector<SparseRow> other_rows(other.num_rows());
        for (size_t k = 0; k < other.num_rows(); ++k)
            other_rows[k] = other.row_entries(k);

        Matrix result{ _field, _rows, other._cols };
        vector<Scalar> acc(other.num_cols(), Scalar::zero(_field));
        for (size_t i = 0; i < num_rows(); ++i) {
            std::fill(acc.begin(), acc.end(), Scalar::zero(_field));
            for (auto & [k, a] : row_entries(i))
                for (auto & [j, b] : other_rows[k])
                    acc[j] += a * b;
            for (size_t j = 0; j < acc.size(); ++j)
                if (! acc[j].is_zero())
                    result.set_at(i, j, acc[j]);
        }
        return result;
    }

    auto Matrix::apply(const Vector & v) const -> Vector
    {
        if (_field != v.field())
            throw UsageError("field mismatch in matrix-vector product");
        if (! (_cols == v.indices()))
            throw UsageError("index mismatch in matrix-vector product");
        Vector result{ _field, _rows };
        auto dense = v.dense();
        for (size_t i = 0; i < num_rows(); ++i) {
            Scalar s = Scalar::zero(_field);
            for (auto & [j, a] : row_entries(i))
                s += a * dense[j];
            if (! s.is_zero())
                result.set_at(i, s);
        }
        return result;
    }

    auto operator== (const Matrix & a, const Matrix & b) -> bool
    {
        if (a._field != b._field || ! (a._rows == b._rows) || ! (a._cols == b._cols))
            return false;
        for (size_t i = 0; i < a.num_rows(); ++i)
            if (a.row_entries(i) != b.row_entries(i))
                return false;
        return true;
    }
}
