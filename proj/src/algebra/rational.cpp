#include <pclab/algebra/rational.hpp>
#include <pclab/errors.hpp>

#include <limits>
#include <numeric>
#include <ostream>

using std::string;
using std::string_view;

namespace pclab
{
    namespace
    {
        using u128 = unsigned __int128;
        using i128 = __int128;

        constexpr std::int64_t small_max = std::numeric_limits<std::int64_t>::max();

        auto gcd_u128(u128 a, u128 b) -> u128
        {
            while (b != 0) {
                if ((a >> 64) == 0 && (b >> 64) == 0)
                    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
                u128 t = a % b;
                a = b;
                b = t;
            }
            return a;
        }

        auto abs_u128(i128 v) -> u128
        {
            return v < 0 ? u128(0) - u128(v) : u128(v);
        }

        auto mpz_from_i128(i128 v) -> mpz_class
        {
            u128 mag = abs_u128(v);
            std::uint64_t words[2] = { static_cast<std::uint64_t>(mag), static_cast<std::uint64_t>(mag >> 64) };
            mpz_class result;
            mpz_import(result.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
            if (v < 0)
                result = -result;
            return result;
        }

        auto fits_small(const mpz_class & z) -> bool
        {
            return mpz_sizeinbase(z.get_mpz_t(), 2) <= 63;
        }
    }

    Rational::Rational(long long n) : _num(n), _den(1)
    {
        if (n == std::numeric_limits<long long>::min())
            set_i128(n, 1);
    }

    Rational::Rational(long long n, long long d)
    {
        if (d == 0)
            throw UsageError("rational with zero denominator");
        set_i128(n, d);
    }

    Rational::Rational(const mpq_class & q)
    {
        mpq_class c = q;
        c.canonicalize();
        set_mpq(std::move(c));
    }

    Rational::Rational(const Rational & other) :
        _num(other._num),
        _den(other._den),
        _big(other._big ? std::make_unique<mpq_class>(*other._big) : nullptr)
    {
    }

    auto Rational::operator= (const Rational & other) -> Rational &
    {
        if (this != &other) {
            _num = other._num;
            _den = other._den;
            _big = other._big ? std::make_unique<mpq_class>(*other._big) : nullptr;
        }
        return *this;
    }

    auto Rational::parse(string_view text) -> Rational
    {
        auto valid_int = [] (string_view s, bool allow_sign) {
            if (! s.empty() && allow_sign && (s[0] == '-' || s[0] == '+'))
                s.remove_prefix(1);
            if (s.empty())
                return false;
            for (char c : s)
                if (c < '0' || c > '9')
                    return false;
            return true;
        };

        auto slash = text.find('/');
        string num_text{ slash == string_view::npos ? text : text.substr(0, slash) };
        string den_text{ slash == string_view::npos ? string_view{ "1" } : text.substr(slash + 1) };
        if (! valid_int(num_text, true) || ! valid_int(den_text, false))
            throw UsageError("malformed rational '" + string{ text } + "'");
        if (num_text[0] == '+')
            num_text.erase(0, 1);

        mpz_class n{ num_text }, d{ den_text };
        if (d == 0)
            throw UsageError("rational with zero denominator '" + string{ text } + "'");
        mpq_class q{ n, d };
        q.canonicalize();
        return Rational{ q };
    }

    auto Rational::set_i128(i128 n, i128 d) -> void
    {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            _big.reset();
            _num = 0;
            _den = 1;
            return;
        }
        u128 g = gcd_u128(abs_u128(n), u128(d));
        if (g != 1) {
            n /= i128(g);
            d /= i128(g);
        }
        if (abs_u128(n) <= u128(small_max) && u128(d) <= u128(small_max)) {
            _big.reset();
            _num = static_cast<std::int64_t>(n);
            _den = static_cast<std::int64_t>(d);
        }
        else
            _big = std::make_unique<mpq_class>(mpz_from_i128(n), mpz_from_i128(d));
    }

    auto Rational::set_mpq(mpq_class && q) -> void
    {
        if (fits_small(q.get_num()) && fits_small(q.get_den())) {
            _num = q.get_num().get_si();
            _den = q.get_den().get_si();
            _big.reset();
        }
        else if (_big)
            *_big = std::move(q);
        else
            _big = std::make_unique<mpq_class>(std::move(q));
    }

    auto Rational::to_mpq() const -> mpq_class
    {
        if (_big)
            return *_big;
        return mpq_class{ mpz_class{ static_cast<long>(_num) }, mpz_class{ static_cast<long>(_den) } };
    }

    auto Rational::numerator() const -> mpz_class
    {
        return _big ? mpz_class{ _big->get_num() } : mpz_class{ static_cast<long>(_num) };
    }

    auto Rational::denominator() const -> mpz_class
    {
        return _big ? mpz_class{ _big->get_den() } : mpz_class{ static_cast<long>(_den) };
    }

    auto Rational::is_integer() const -> bool
    {
        return _big ? _big->get_den() == 1 : _den == 1;
    }

    auto Rational::sign() const -> int
    {
        if (_big)
            return sgn(*_big);
        return (_num > 0) - (_num < 0);
    }

    auto Rational::to_string() const -> string
    {
        if (_big)
            return _big->get_str();
        if (_den == 1)
            return std::to_string(_num);
        return std::to_string(_num) + "/" + std::to_string(_den);
    }

    auto Rational::inverse() const -> Rational
    {
        if (is_zero())
            throw std::domain_error("inverse of zero");
        if (! _big) {
            Rational r;
            r.set_i128(_den, _num);
            return r;
        }
        mpq_class q = 1 / *_big;
        Rational r;
        r.set_mpq(std::move(q));
        return r;
    }

    auto Rational::operator- () const -> Rational
    {
        Rational r;
        if (_big)
            r.set_mpq(mpq_class{ -*_big });
        else {
            r._num = -_num;
            r._den = _den;
        }
        return r;
    }

    auto Rational::operator+= (const Rational & o) -> Rational &
    {
        if (! _big && ! o._big) {
            if (_den == 1 && o._den == 1)
                set_i128(i128(_num) + o._num, 1);
            else
                set_i128(i128(_num) * o._den + i128(o._num) * _den, i128(_den) * o._den);
        }
        else
            set_mpq(to_mpq() + o.to_mpq());
        return *this;
    }

    auto Rational::operator-= (const Rational & o) -> Rational &
    {
        if (! _big && ! o._big) {
            if (_den == 1 && o._den == 1)
                set_i128(i128(_num) - o._num, 1);
            else
                set_i128(i128(_num) * o._den - i128(o._num) * _den, i128(_den) * o._den);
        }
        else
            set_mpq(to_mpq() - o.to_mpq());
        return *this;
    }

    auto Rational::operator*= (const Rational & o) -> Rational &
    {
        if (! _big && ! o._big)
            set_i128(i128(_num) * o._num, i128(_den) * o._den);
        else
            set_mpq(to_mpq() * o.to_mpq());
        return *this;
    }

    auto Rational::operator/= (const Rational & o) -> Rational &
    {
        if (o.is_zero())
            throw std::domain_error("division by zero");
        if (! _big && ! o._big)
            set_i128(i128(_num) * o._den, i128(_den) * o._num);
        else
            set_mpq(to_mpq() / o.to_mpq());
        return *this;
    }

    auto Rational::add_product(const Rational & a, const Rational & b) -> void
    {
        if (! _big && ! a._big && ! b._big && _den == 1 && a._den == 1 && b._den == 1) {
            i128 p = i128(a._num) * b._num;
            // |p| < 2^126 and |_num| < 2^63, so the sum cannot overflow.
            set_i128(i128(_num) + p, 1);
            return;
        }
        *this += a * b;
    }

    auto operator== (const Rational & a, const Rational & b) -> bool
    {
        if (! a._big && ! b._big)
            return a._num == b._num && a._den == b._den;
        if (a._big && b._big)
            return *a._big == *b._big;
        return false;
    }

    auto operator< (const Rational & a, const Rational & b) -> bool
    {
        if (! a._big && ! b._big)
            return i128(a._num) * b._den < i128(b._num) * a._den;
        return a.to_mpq() < b.to_mpq();
    }

    auto operator<< (std::ostream & s, const Rational & r) -> std::ostream &
    {
        return s << r.to_string();
    }
}
