#include <pclab/pc/polynomial.hpp>
#include <pclab/errors.hpp>

#include <algorithm>
#include <iterator>

using std::string;
using std::vector;

namespace pclab
{
    Monomial::Monomial(vector<Var> vars) : _vars(std::move(vars))
    {
        for (size_t i = 0; i < _vars.size(); ++i) {
            if (_vars[i] == 0)
                throw UsageError("variable ids start at 1");
            if (i > 0 && _vars[i - 1] >= _vars[i])
                throw UsageError("monomial variables must be strictly increasing");
        }
    }

    auto Monomial::contains(Var v) const -> bool
    {
        return std::binary_search(_vars.begin(), _vars.end(), v);
    }

    auto Monomial::operator* (const Monomial & other) const -> Monomial
    {
        Monomial result;
        std::set_union(_vars.begin(), _vars.end(), other._vars.begin(), other._vars.end(), std::back_inserter(result._vars));
        return result;
    }

    auto Monomial::to_string() const -> string
    {
        if (_vars.empty())
            return "1";
        string s;
        for (auto v : _vars) {
            if (! s.empty())
                s += "*";
            s += "x" + std::to_string(v);
        }
        return s;
    }

    auto operator<=> (const Monomial & a, const Monomial & b) -> std::strong_ordering
    {
        if (auto c = a._vars.size() <=> b._vars.size(); c != 0)
            return c;
        return a._vars <=> b._vars;
    }

    auto Polynomial::constant(const Field & f, long long c) -> Polynomial
    {
        Polynomial p{ f };
        p.add_term(Monomial{}, Scalar{ f, c });
        return p;
    }

    auto Polynomial::variable(const Field & f, Var v) -> Polynomial
    {
        Polynomial p{ f };
        p.add_term(Monomial{ v }, Scalar::one(f));
        return p;
    }

    auto Polynomial::term(const Scalar & c, Monomial m) -> Polynomial
    {
        Polynomial p{ c.field() };
        p.add_term(m, c);
        return p;
    }

    auto Polynomial::degree() const -> int
    {
        return _terms.empty() ? -1 : _terms.rbegin()->first.degree();
    }

    auto Polynomial::coefficient(const Monomial & m) const -> Scalar
    {
        auto it = _terms.find(m);
        return it == _terms.end() ? Scalar::zero(_field) : it->second;
    }

    auto Polynomial::leading_monomial() const -> const Monomial &
    {
        if (_terms.empty())
            throw UsageError("zero polynomial has no leading monomial");
        return _terms.rbegin()->first;
    }

    auto Polynomial::max_var() const -> Var
    {
        Var result = 0;
        for (auto & [m, c] : _terms)
            if (! m.vars().empty())
                result = std::max(result, m.vars().back());
        return result;
    }

    auto Polynomial::add_term(const Monomial & m, const Scalar & c) -> void
    {
        if (c.field() != _field)
            throw UsageError("field mismatch adding term");
        if (c.is_zero())
            return;
        auto [it, inserted] = _terms.emplace(m, c);
        if (! inserted) {
            it->second += c;
            if (it->second.is_zero())
                _terms.erase(it);
        }
    }

    auto Polynomial::operator+= (const Polynomial & other) -> Polynomial &
    {
        for (auto & [m, c] : other._terms)
            add_term(m, c);
        return *this;
    }

    auto Polynomial::operator-= (const Polynomial & other) -> Polynomial &
    {
        for (auto & [m, c] : other._terms)
            add_term(m, -c);
        return *this;
    }

    auto Polynomial::operator*= (const Scalar & c) -> Polynomial &
    {
        if (c.is_zero()) {
            _terms.clear();
            return *this;
        }
        for (auto & [m, v] : _terms)
            v *= c;
        return *this;
    }

    auto operator* (const Polynomial & a, const Polynomial & b) -> Polynomial
    {
        if (a._field != b._field)
            throw UsageError("field mismatch in polynomial product");
        Polynomial result{ a._field };
        for (auto & [ma, ca] : a._terms)
            for (auto & [mb, cb] : b._terms)
                result.add_term(ma * mb, ca * cb);
        return result;
    }

    auto operator* (const Polynomial & a, const Monomial & m) -> Polynomial
    {
        Polynomial result{ a._field };
        for (auto & [ma, ca] : a._terms)
            result.add_term(ma * m, ca);
        return result;
    }

    auto operator== (const Polynomial & a, const Polynomial & b) -> bool
    {
        return a._field == b._field && a._terms == b._terms;
    }

    auto Polynomial::evaluate(const vector<std::uint8_t> & assignment) const -> Scalar
    {
        Scalar total = Scalar::zero(_field);
        for (auto & [m, c] : _terms) {
            bool on = true;
            for (auto v : m.vars())
                if (v >= assignment.size() || ! assignment[v]) {
                    on = false;
                    break;
                }
            if (on)
                total += c;
        }
        return total;
    }

    auto Polynomial::to_string() const -> string
    {
        if (_terms.empty())
            return "0";
        string s;
        for (auto it = _terms.rbegin(); it != _terms.rend(); ++it) {
            if (! s.empty())
                s += " + ";
            if (it->first.is_one())
                s += it->second.to_string();
            else if (it->second.is_one())
                s += it->first.to_string();
            else
                s += it->second.to_string() + "*" + it->first.to_string();
        }
        return s;
    }

    auto multlin(const Field & f, const vector<RawTerm> & raw) -> Polynomial
    {
        Polynomial result{ f };
        for (auto & t : raw) {
            vector<Var> vars = t.vars;
            std::sort(vars.begin(), vars.end());
            vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
            result.add_term(Monomial{ std::move(vars) }, t.coef);
        }
        return result;
    }
}
