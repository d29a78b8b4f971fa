#pragma once

#include <pclab/algebra/field.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pclab
{
    using Index = std::int64_t;

    // Ordered list of distinct labels, with constant-time label -> position lookup.
    class IndexList
    {
        public:
            IndexList() = default;
            explicit IndexList(std::vector<Index> labels);
            static auto range(std::size_t n) -> IndexList;

            auto size() const -> std::size_t { return _labels.size(); }
            auto labels() const -> const std::vector<Index> & { return _labels; }
            auto operator[] (std::size_t i) const -> Index { return _labels[i]; }
            auto position(Index label) const -> std::optional<std::size_t>;
            auto position_or_throw(Index label) const -> std::size_t;

            friend auto operator== (const IndexList & a, const IndexList & b) -> bool { return a._labels == b._labels; }

        private:
            std::vector<Index> _labels;
            std::shared_ptr<std::unordered_map<Index, std::size_t>> _pos;
    };

    using SparseRow = std::vector<std::pair<std::uint32_t, Scalar>>;

    class Vector
    {
        public:
            Vector() = default;
            Vector(const Field & f, IndexList indices);
            static auto from_values(const Field & f, const std::vector<long long> & values) -> Vector;
            static auto from_scalars(const Field & f, IndexList indices, const std::vector<Scalar> & values) -> Vector;

            auto field() const -> const Field & { return _field; }
            auto indices() const -> const IndexList & { return _indices; }
            auto size() const -> std::size_t { return _indices.size(); }

            auto get(Index label) const -> Scalar;
            auto set(Index label, const Scalar & value) -> void;
            auto at(std::size_t pos) const -> Scalar;
            auto set_at(std::size_t pos, const Scalar & value) -> void;

            // Stored nonzeros, by position, ascending.
            auto entries() const -> const SparseRow & { return _entries; }
            auto is_zero() const -> bool { return _entries.empty(); }
            auto dense() const -> std::vector<Scalar>;

            friend auto operator== (const Vector & a, const Vector & b) -> bool;

        private:
            Field _field;
            IndexList _indices;
            SparseRow _entries;
    };

    class Matrix
    {
        public:
            Matrix() = default;
            Matrix(const Field & f, IndexList rows, IndexList cols);
            static auto from_values(const Field & f, const std::vector<std::vector<long long>> & values) -> Matrix;
            static auto identity(const Field & f, IndexList labels) -> Matrix;

            auto field() const -> const Field & { return _field; }
            auto rows() const -> const IndexList & { return _rows; }
            auto cols() const -> const IndexList & { return _cols; }
            auto num_rows() const -> std::size_t { return _rows.size(); }
            auto num_cols() const -> std::size_t { return _cols.size(); }

            auto get(Index row, Index col) const -> Scalar;
            auto set(Index row, Index col, const Scalar & value) -> void;
            auto at(std::size_t i, std::size_t j) const -> Scalar;
            auto set_at(std::size_t i, std::size_t j, const Scalar & value) -> void;

            // Nonzeros of row i, by column position, ascending.
            auto row_entries(std::size_t i) const -> SparseRow;
            auto column(std::size_t j) const -> Vector;
            auto nonzeros() const -> std::size_t { return _nnz; }
            auto is_dense() const -> bool { return _dense != nullptr; }

            auto transpose() const -> Matrix;
            auto operator* (const Matrix & other) const -> Matrix;
            auto apply(const Vector & v) const -> Vector;

            friend auto operator== (const Matrix & a, const Matrix & b) -> bool;

        private:
            Field _field;
            IndexList _rows, _cols;
            std::vector<SparseRow> _sparse;
            std::unique_ptr<std::vector<Scalar>> _dense;
            std::size_t _nnz = 0;

            auto maybe_densify() -> void;

        public:
            Matrix(const Matrix & other);
            Matrix(Matrix &&) noexcept = default;
            auto operator= (const Matrix & other) -> Matrix &;
            auto operator= (Matrix &&) noexcept -> Matrix & = default;
    };
}
