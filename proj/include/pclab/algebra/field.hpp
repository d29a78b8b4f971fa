#pragma once

#include <pclab/algebra/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace pclab
{
    class Field
    {
        public:
            static auto rationals() -> Field { return Field{}; }
            static auto prime(std::uint32_t p) -> Field;

            // "Q", "Fp:3", "F3" and "GF(3)" are all accepted.
            static auto parse(std::string_view text) -> Field;

            auto is_rational() const -> bool { return _p == 0; }
            auto is_prime() const -> bool { return _p != 0; }
            auto characteristic() const -> std::uint32_t { return _p; }
            auto to_string() const -> std::string;

            friend auto operator== (const Field &, const Field &) -> bool = default;

        private:
            std::uint32_t _p = 0;
    };

    auto is_prime_number(std::uint64_t n) -> bool;

    // Residue arithmetic for primes below 2^31, so products fit in 64 bits.
    struct ModArith
    {
        std::uint32_t p;

        auto add(std::uint32_t a, std::uint32_t b) const -> std::uint32_t
        {
            std::uint32_t s = a + b;
            return s >= p ? s - p : s;
        }

        auto sub(std::uint32_t a, std::uint32_t b) const -> std::uint32_t
        {
            return a >= b ? a - b : a + p - b;
        }

        auto mul(std::uint32_t a, std::uint32_t b) const -> std::uint32_t
        {
            return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p);
        }

        auto neg(std::uint32_t a) const -> std::uint32_t
        {
            return a == 0 ? 0 : p - a;
        }

        auto inv(std::uint32_t a) const -> std::uint32_t;
        auto from_integer(long long v) const -> std::uint32_t;
        auto from_rational(const Rational & r) const -> std::uint32_t;
    };

    class Scalar
    {
        public:
            Scalar() = default;
            Scalar(const Field & f, long long v);
            Scalar(const Field & f, const Rational & v);

            static auto zero(const Field & f) -> Scalar { return Scalar{ f, 0 }; }
            static auto one(const Field & f) -> Scalar { return Scalar{ f, 1 }; }
            static auto from_residue(const Field & f, std::uint32_t r) -> Scalar;

            auto field() const -> const Field & { return _field; }
            auto is_zero() const -> bool;
            auto is_one() const -> bool;

            // Only meaningful over Q.
            auto rational() const -> const Rational &;
            // Only meaningful over F_p.
            auto residue() const -> std::uint32_t;

            auto inverse() const -> Scalar;
            auto to_string() const -> std::string;

            auto operator- () const -> Scalar;
            auto operator+= (const Scalar &) -> Scalar &;
            auto operator-= (const Scalar &) -> Scalar &;
            auto operator*= (const Scalar &) -> Scalar &;
            auto operator/= (const Scalar &) -> Scalar &;

            friend auto operator+ (Scalar a, const Scalar & b) -> Scalar { return a += b; }
            friend auto operator- (Scalar a, const Scalar & b) -> Scalar { return a -= b; }
            friend auto operator* (Scalar a, const Scalar & b) -> Scalar { return a *= b; }
            friend auto operator/ (Scalar a, const Scalar & b) -> Scalar { return a /= b; }
            friend auto operator== (const Scalar & a, const Scalar & b) -> bool;
            friend auto operator!= (const Scalar & a, const Scalar & b) -> bool { return ! (a == b); }

        private:
            Field _field;
            Rational _q;
            std::uint32_t _r = 0;

            auto check(const Scalar & other) const -> void;
    };

    auto operator<< (std::ostream & s, const Scalar & v) -> std::ostream &;
}
