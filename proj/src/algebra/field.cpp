#include <pclab/algebra/field.hpp>
#include <pclab/errors.hpp>

#include <charconv>
#include <ostream>

using std::string;
using std::string_view;

namespace pclab
{
    auto is_prime_number(std::uint64_t n) -> bool
    {
        if (n < 2)
            return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }

    auto Field::prime(std::uint32_t p) -> Field
    {
        if (p >= (1u << 31))
            throw UsageError("prime " + std::to_string(p) + " too large (must be below 2^31)");
        if (! is_prime_number(p))
            throw UsageError(std::to_string(p) + " is not prime");
        Field f;
        f._p = p;
        return f;
    }

    auto Field::parse(string_view text) -> Field
    {
        if (text == "Q" || text == "q")
            return rationals();

        string_view digits;
        if (text.starts_with("Fp:"))
            digits = text.substr(3);
        else if (text.starts_with("GF(") && text.ends_with(")"))
            digits = text.substr(3, text.size() - 4);
        else if (text.starts_with("F"))
            digits = text.substr(1);
        else
            throw UsageError("unknown field '" + string{ text } + "' (expected Q or Fp:<prime>)");

        std::uint64_t p = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || p >= (1ull << 31))
            throw UsageError("unknown field '" + string{ text } + "' (expected Q or Fp:<prime>)");
        return prime(static_cast<std::uint32_t>(p));
    }

    auto Field::to_string() const -> string
    {
        return _p == 0 ? "Q" : "Fp:" + std::to_string(_p);
    }

    auto ModArith::inv(std::uint32_t a) const -> std::uint32_t
    {
        if (a == 0)
            throw std::domain_error("inverse of zero");
        // Fermat: a^(p-2).
        std::uint64_t result = 1, base = a;
        std::uint32_t e = p - 2;
        while (e) {
            if (e & 1)
                result = result * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(result);
    }

    auto ModArith::from_integer(long long v) const -> std::uint32_t
    {
        long long r = v % static_cast<long long>(p);
        if (r < 0)
            r += p;
        return static_cast<std::uint32_t>(r);
    }

    auto ModArith::from_rational(const Rational & r) const -> std::uint32_t
    {
        mpz_class pz{ static_cast<unsigned long>(p) };
        mpz_class n = r.numerator() % pz, d = r.denominator() % pz;
        if (n < 0)
            n += pz;
        if (d == 0)
            throw UsageError("rational " + r.to_string() + " has no image in F_" + std::to_string(p));
        return mul(static_cast<std::uint32_t>(n.get_ui()), inv(static_cast<std::uint32_t>(d.get_ui())));
    }

    Scalar::Scalar(const Field & f, long long v) : _field(f)
    {
        if (f.is_rational())
            _q = Rational{ v };
        else
            _r = ModArith{ f.characteristic() }.from_integer(v);
    }

    Scalar::Scalar(const Field & f, const Rational & v) : _field(f)
    {
        if (f.is_rational())
            _q = v;
        else
            _r = ModArith{ f.characteristic() }.from_rational(v);
    }

    auto Scalar::from_residue(const Field & f, std::uint32_t r) -> Scalar
    {
        if (f.is_rational())
            throw UsageError("residue given for field Q");
        Scalar s;
        s._field = f;
        s._r = r % f.characteristic();
        return s;
    }

    auto Scalar::is_zero() const -> bool
    {
        return _field.is_rational() ? _q.is_zero() : _r == 0;
    }

    auto Scalar::is_one() const -> bool
    {
        return _field.is_rational() ? _q.is_one() : _r == 1;
    }

    auto Scalar::rational() const -> const Rational &
    {
        if (! _field.is_rational())
            throw UsageError("rational() on a prime-field scalar");
        return _q;
    }

    auto Scalar::residue() const -> std::uint32_t
    {
        if (_field.is_rational())
            throw UsageError("residue() on a rational scalar");
        return _r;
    }

    auto Scalar::check(const Scalar & other) const -> void
    {
        if (_field != other._field)
            throw UsageError("field mismatch: " + _field.to_string() + " vs " + other._field.to_string());
    }

    auto Scalar::inverse() const -> Scalar
    {
        Scalar s = *this;
        if (_field.is_rational())
            s._q = _q.inverse();
        else
            s._r = ModArith{ _field.characteristic() }.inv(_r);
        return s;
    }

    auto Scalar::to_string() const -> string
    {
        return _field.is_rational() ? _q.to_string() : std::to_string(_r);
    }

    auto Scalar::operator- () const -> Scalar
    {
        Scalar s = *this;
        if (_field.is_rational())
            s._q = -_q;
        else
            s._r = ModArith{ _field.characteristic() }.neg(_r);
        return s;
    }

    auto Scalar::operator+= (const Scalar & o) -> Scalar &
    {
        check(o);
        if (_field.is_rational())
            _q += o._q;
        else
            _r = ModArith{ _field.characteristic() }.add(_r, o._r);
        return *this;
    }

    auto Scalar::operator-= (const Scalar & o) -> Scalar &
    {
        check(o);
        if (_field.is_rational())
            _q -= o._q;
        else
            _r = ModArith{ _field.characteristic() }.sub(_r, o._r);
        return *this;
    }

    auto Scalar::operator*= (const Scalar & o) -> Scalar &
    {
        check(o);
        if (_field.is_rational())
            _q *= o._q;
        else
            _r = ModArith{ _field.characteristic() }.mul(_r, o._r);
        return *this;
    }

    auto Scalar::operator/= (const Scalar & o) -> Scalar &
    {
        check(o);
        return *this *= o.inverse();
    }

    auto operator== (const Scalar & a, const Scalar & b) -> bool
    {
        if (a._field != b._field)
            return false;
        return a._field.is_rational() ? a._q == b._q : a._r == b._r;
    }

    auto operator<< (std::ostream & s, const Scalar & v) -> std::ostream &
    {
        return s << v.to_string();
    }
}
