#include <pclab/algebra/linalg.hpp>
#include <pclab/errors.hpp>

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pclab;

namespace
{
    auto Q = Field::rationals();

    auto to_q(const Matrix & m) -> oracle::QMatrix
    {
        oracle::QMatrix out(m.num_rows(), std::vector<mpq_class>(m.num_cols()));
        for (std::size_t i = 0; i < m.num_rows(); ++i)
            for (std::size_t j = 0; j < m.num_cols(); ++j)
                out[i][j] = m.at(i, j).rational().to_mpq();
        return out;
    }

    auto random_matrix(std::mt19937_64 & rng, std::size_t rows, std::size_t cols, int lo = -3, int hi = 3) -> Matrix
    {
        std::uniform_int_distribution<int> d(lo, hi);
        std::vector<std::vector<long long>> v(rows, std::vector<long long>(cols));
        for (auto & r : v)
            for (auto & x : r)
                x = d(rng);
        return Matrix::from_values(Q, v);
    }

    auto random_vector(std::mt19937_64 & rng, std::size_t n) -> Vector
    {
        std::uniform_int_distribution<int> d(-3, 3);
        std::vector<long long> v(n);
        for (auto & x : v)
            x = d(rng);
        return Vector::from_values(Q, v);
    }
}

TEST(rational, reduces_and_promotes)
{
    EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
    EXPECT_EQ(Rational::parse("10/4").to_string(), "5/2");
    Rational big{ std::int64_t{ 1 } << 62 };
    Rational sq = big * big;
    EXPECT_FALSE(sq.is_small());
    EXPECT_EQ(sq / big, big);
    EXPECT_TRUE((sq / big).is_small());
    EXPECT_THROW(Rational(1, 0), UsageError);
}

TEST(rational, add_product_matches_mpq)
{
    std::mt19937_64 rng{ 11 };
    std::uniform_int_distribution<long long> d(-1'000'000'007LL, 1'000'000'007LL);
    for (int i = 0; i < 2000; ++i) {
        Rational a{ d(rng), d(rng) | 1 }, b{ d(rng), d(rng) | 1 }, c{ d(rng), 7 };
        mpq_class expect = c.to_mpq() + a.to_mpq() * b.to_mpq();
        c.add_product(a, b);
        ASSERT_EQ(c.to_mpq(), expect);
    }
}

TEST(field, parse_forms)
{
    EXPECT_TRUE(Field::parse("Q").is_rational());
    EXPECT_EQ(Field::parse("Fp:3").characteristic(), 3u);
    EXPECT_EQ(Field::parse("F5").characteristic(), 5u);
    EXPECT_EQ(Field::parse("GF(7)").characteristic(), 7u);
    EXPECT_THROW(Field::parse("Fp:4"), UsageError);
}

TEST(field, scalar_axioms_hold_on_random_samples)
{
    std::mt19937_64 rng{ 5 };
    for (auto f : { Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(5) }) {
        std::uniform_int_distribution<long long> d(-20, 20);
        auto draw = [&] {
            return f.is_rational() ? Scalar(f, Rational(d(rng), 1 + (d(rng) + 20) % 7)) : Scalar(f, d(rng));
        };
        for (int i = 0; i < 300; ++i) {
            auto a = draw(), b = draw(), c = draw();
            EXPECT_EQ((a + b) + c, a + (b + c));
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ(a + b, b + a);
            EXPECT_EQ(a - a, Scalar::zero(f));
            if (! a.is_zero())
                EXPECT_EQ(a * a.inverse(), Scalar::one(f));
        }
    }
}

TEST(field, mixing_fields_is_rejected)
{
    EXPECT_THROW(Scalar(Field::prime(3), 1) + Scalar(Field::prime(5), 1), UsageError);
}

TEST(matrix, stores_no_zeros)
{
    auto m = Matrix::from_values(Q, { { 0, 1 }, { 0, 0 } });
    EXPECT_EQ(m.nonzeros(), 1u);
    m.set_at(0, 1, Scalar::zero(Q));
    EXPECT_EQ(m.nonzeros(), 0u);
    EXPECT_TRUE(m.row_entries(0).empty());
}

TEST(matrix, product_and_transpose)
{
    auto a = Matrix::from_values(Q, { { 1, 2 }, { 3, 4 } });
    EXPECT_EQ(a * Matrix::identity(Q, a.cols()), a);
    EXPECT_EQ((a * a.transpose()).at(0, 1), Scalar(Q, 11));
}

TEST(gauss_solve, identity_system)
{
    auto m = Matrix::identity(Q, IndexList::range(2));
    auto s = gauss_solve(m, Vector::from_values(Q, { 1, 2 }));
    ASSERT_TRUE(s);
    EXPECT_EQ(s->particular, Vector::from_values(Q, { 1, 2 }));
    EXPECT_TRUE(s->kernel_basis.empty());
}

TEST(gauss_solve, inconsistent_zero_row)
{
    auto m = Matrix::from_values(Q, { { 0, 0 } });
    EXPECT_FALSE(gauss_solve(m, Vector::from_values(Q, { 1 })));
}

TEST(gauss_solve, one_equation_two_unknowns)
{
    auto m = Matrix::from_values(Q, { { 1, 1 } });
    auto s = gauss_solve(m, Vector::from_values(Q, { 0 }));
    ASSERT_TRUE(s);
    EXPECT_TRUE(s->particular.is_zero());
    ASSERT_EQ(s->kernel_basis.size(), 1u);
    auto k = s->kernel_basis[0];
    EXPECT_TRUE(m.apply(k).is_zero());
    EXPECT_EQ(k.at(0), -k.at(1));
}

TEST(gauss_solve, field_and_index_mismatch)
{
    auto m = Matrix::from_values(Q, { { 1 } });
    EXPECT_THROW(gauss_solve(m, Vector::from_values(Field::prime(3), { 1 })), UsageError);
    EXPECT_THROW(gauss_solve(m, Vector::from_values(Q, { 1, 2 })), UsageError);
}

TEST(gauss_solve, random_systems_against_mpq_rank)
{
    std::mt19937_64 rng{ 17 };
    for (int i = 0; i < 150; ++i) {
        std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
        auto m = random_matrix(rng, r, c, -2, 2);
        auto b = random_vector(rng, r);
        auto s = gauss_solve(m, b);
        std::vector<mpq_class> qb;
        for (std::size_t j = 0; j < r; ++j)
            qb.push_back(b.at(j).rational().to_mpq());
        ASSERT_EQ(s.has_value(), oracle::solvable(to_q(m), qb));
        if (s) {
            EXPECT_EQ(m.apply(s->particular), b);
            EXPECT_EQ(s->kernel_basis.size(), c - oracle::rank(to_q(m)));
            for (auto & k : s->kernel_basis)
                EXPECT_TRUE(m.apply(k).is_zero());
        }
    }
}

TEST(gram_solvable, small_cases)
{
    EXPECT_TRUE(gram_solvable(Matrix::identity(Q, IndexList::range(2)), Vector::from_values(Q, { 1, 2 })));
    EXPECT_FALSE(gram_solvable(Matrix::from_values(Q, { { 1 }, { 1 } }), Vector::from_values(Q, { 1, 0 })));
    EXPECT_TRUE(gram_solvable(Matrix::from_values(Q, { { 0, 3 }, { 1, 5 } }), Vector::from_values(Q, { 0, 0 })));
}

TEST(gram_solvable, rejects_prime_fields)
{
    auto f = Field::prime(3);
    EXPECT_THROW(gram_solvable(Matrix::from_values(f, { { 1 } }), Vector::from_values(f, { 1 })), UnsupportedField);
}

TEST(kernel_generators, projection_of_single_row)
{
    auto s = kernel_generators(Matrix::from_values(Q, { { 1, 1 } }));
    EXPECT_EQ(s.at(0, 0), Scalar(Q, Rational(1, 2)));
    EXPECT_EQ(s.at(0, 1), Scalar(Q, Rational(-1, 2)));
    EXPECT_EQ(s.at(1, 0), Scalar(Q, Rational(-1, 2)));
    EXPECT_EQ(s.at(1, 1), Scalar(Q, Rational(1, 2)));
}

TEST(kernel_generators, identity_and_zero)
{
    auto id = Matrix::identity(Q, IndexList::range(3));
    EXPECT_EQ(kernel_generators(id).nonzeros(), 0u);
    auto z = Matrix(Q, IndexList::range(2), IndexList::range(2));
    EXPECT_EQ(rank(kernel_generators(z)), 2u);
}

TEST(kernel_generators, random_properties)
{
    std::mt19937_64 rng{ 23 };
    for (int i = 0; i < 60; ++i) {
        auto m = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6);
        auto s = kernel_generators(m);
        EXPECT_EQ(s.rows(), m.cols());
        EXPECT_EQ(s.cols(), m.cols());
        EXPECT_EQ((m * s).nonzeros(), 0u);
        EXPECT_EQ(oracle::rank(to_q(s)), m.num_cols() - oracle::rank(to_q(m)));
    }
}

TEST(compress_image, small_cases)
{
    auto n = Matrix::from_values(Q, { { 1, 0 }, { 0, 0 } });
    EXPECT_EQ(compress_image(n), n);
    auto col = Matrix::from_values(Q, { { 1 }, { 1 } });
    EXPECT_EQ(compress_image(col), Matrix::from_values(Q, { { 1, 1 }, { 1, 1 } }));
}

TEST(compress_image, random_five_by_nine)
{
    std::mt19937_64 rng{ 29 };
    for (int i = 0; i < 50; ++i) {
        auto n = random_matrix(rng, 5, 9);
        auto b = compress_image(n);
        EXPECT_EQ(oracle::rank(to_q(b)), oracle::rank(to_q(n)));
        for (std::size_t j = 0; j < n.num_cols(); ++j)
            EXPECT_TRUE(gauss_solve(b, n.column(j)).has_value());
    }
}

TEST(orbit_solve, singletons_match_gauss)
{
    std::mt19937_64 rng{ 31 };
    for (int i = 0; i < 40; ++i) {
        auto m = random_matrix(rng, 3, 4);
        auto b = random_vector(rng, 3);
        std::vector<std::vector<Index>> orbits;
        for (Index j = 0; j < 4; ++j)
            orbits.push_back({ j });
        auto v = orbit_solve(m, b, orbits);
        EXPECT_EQ(v.has_value(), gauss_solve(m, b).has_value());
        if (v)
            EXPECT_EQ(m.apply(*v), b);
    }
}

TEST(orbit_solve, one_orbit_over_f3)
{
    auto f = Field::prime(3);
    auto m = Matrix::from_values(f, { { 1, 1 } });
    auto v = orbit_solve(m, Vector::from_values(f, { 2 }), { { 0, 1 } });
    ASSERT_TRUE(v);
    EXPECT_EQ(*v, Vector::from_values(f, { 1, 1 }));
}

TEST(orbit_solve, antisymmetric_row_has_no_symmetric_solution)
{
    auto m = Matrix::from_values(Q, { { 1, -1 } });
    EXPECT_FALSE(orbit_solve(m, Vector::from_values(Q, { 1 }), { { 0, 1 } }));
}

TEST(orbit_solve, partition_must_cover_columns)
{
    auto m = Matrix::from_values(Q, { { 1, 1 } });
    EXPECT_THROW(orbit_solve(m, Vector::from_values(Q, { 1 }), { { 0 } }), UsageError);
}

TEST(orbit_solve, random_solutions_are_sound)
{
    std::mt19937_64 rng{ 37 };
    for (int i = 0; i < 60; ++i) {
        auto m = random_matrix(rng, 3, 6);
        auto b = random_vector(rng, 3);
        auto v = orbit_solve(m, b, { { 0, 1 }, { 2 }, { 3, 4, 5 } });
        if (v) {
            EXPECT_EQ(m.apply(*v), b);
            EXPECT_EQ(v->at(0), v->at(1));
            EXPECT_EQ(v->at(3), v->at(5));
        }
    }
}
