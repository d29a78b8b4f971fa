#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pclab
{
    // Exact rational, always reduced with a positive denominator. Values whose numerator and
    // denominator fit in 63 bits live inline; anything larger is promoted to GMP and demoted
    // again as soon as it fits.
    class Rational
    {
        public:
            Rational() = default;
            Rational(long long n);
            Rational(long long n, long long d);
            explicit Rational(const mpq_class & q);

            Rational(const Rational & other);
            Rational(Rational &&) noexcept = default;
            auto operator= (const Rational & other) -> Rational &;
            auto operator= (Rational &&) noexcept -> Rational & = default;
            ~Rational() = default;

            // Accepts "n" or "n/d" with optional sign on n.
            static auto parse(std::string_view text) -> Rational;

            auto is_zero() const -> bool { return ! _big && _num == 0; }
            auto is_one() const -> bool { return ! _big && _num == 1 && _den == 1; }
            auto is_integer() const -> bool;
            auto sign() const -> int;
            auto is_small() const -> bool { return ! _big; }

            auto numerator() const -> mpz_class;
            auto denominator() const -> mpz_class;
            auto to_mpq() const -> mpq_class;
            auto to_string() const -> std::string;

            auto inverse() const -> Rational;

            auto operator- () const -> Rational;
            auto operator+= (const Rational & other) -> Rational &;
            auto operator-= (const Rational & other) -> Rational &;
            auto operator*= (const Rational & other) -> Rational &;
            auto operator/= (const Rational & other) -> Rational &;

            friend auto operator+ (Rational a, const Rational & b) -> Rational { return a += b; }
            friend auto operator- (Rational a, const Rational & b) -> Rational { return a -= b; }
            friend auto operator* (Rational a, const Rational & b) -> Rational { return a *= b; }
            friend auto operator/ (Rational a, const Rational & b) -> Rational { return a /= b; }

            friend auto operator== (const Rational & a, const Rational & b) -> bool;
            friend auto operator< (const Rational & a, const Rational & b) -> bool;
            friend auto operator!= (const Rational & a, const Rational & b) -> bool { return ! (a == b); }

            // this += a * b, the elimination workhorse.
            auto add_product(const Rational & a, const Rational & b) -> void;

        private:
            std::int64_t _num = 0, _den = 1;
            std::unique_ptr<mpq_class> _big;

            auto set_i128(__int128 n, __int128 d) -> void;
            auto set_mpq(mpq_class && q) -> void;
    };

    auto operator<< (std::ostream & s, const Rational & r) -> std::ostream &;
}
