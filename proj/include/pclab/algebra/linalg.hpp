#pragma once

#include <pclab/algebra/matrix.hpp>

#include <optional>
#include <vector>

namespace pclab
{
    struct Solution
    {
        Vector particular;
        std::vector<Vector> kernel_basis;
    };

    // Plain Gauss-Jordan elimination; the independent oracle for everything else in this file.
    auto gauss_solve(const Matrix & m, const Vector & b) -> std::optional<Solution>;

    auto rank(const Matrix & m) -> std::size_t;
    auto kernel_basis(const Matrix & m) -> std::vector<Vector>;

    // Is b in the span of the given vectors (all over the same index list)?
    auto in_span(const std::vector<Vector> & generators, const Vector & b) -> bool;

    // Solvability of M x = b over Q decided by membership of b in span{B b, ..., B^(n+1) b}
    // with B = M M^T and n = min(|rows|, |cols|).
    auto gram_solvable(const Matrix & m, const Vector & b) -> bool;

    // Square matrix S on M.cols with im(S) = ker(M); column j is the projection of e_j onto
    // ker(M^T M) along im(M^T M).
    auto kernel_generators(const Matrix & m) -> Matrix;

    // N N^T, whose image equals im(N) over Q.
    auto compress_image(const Matrix & n) -> Matrix;

    // Solutions of M x = b that are constant on each orbit of columns.
    auto orbit_solve(const Matrix & m, const Vector & b, const std::vector<std::vector<Index>> & orbits) -> std::optional<Vector>;

    // Matrix whose columns are the given vectors (all indexed by `rows`).
    auto matrix_from_columns(const Field & f, const IndexList & rows, const std::vector<Vector> & columns) -> Matrix;
}
