#include <pclab/resolution/cnf.hpp>
#include <pclab/errors.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

using std::string;
using std::uint32_t;
using std::vector;

namespace pclab
{
    auto Literal::from_dimacs(long long v) -> Literal
    {
        if (v == 0)
            throw UsageError("literal 0 is not a variable");
        return Literal{ static_cast<uint32_t>(v < 0 ? -v : v), v > 0 };
    }

    auto pos(uint32_t v) -> Literal
    {
        return Literal{ v, true };
    }

    auto neg(uint32_t v) -> Literal
    {
        return Literal{ v, false };
    }

    Clause::Clause(vector<Literal> literals) : _lits(std::move(literals))
    {
        for (auto & l : _lits)
            if (l.var == 0)
                throw UsageError("variable ids start at 1");
        std::sort(_lits.begin(), _lits.end());
        _lits.erase(std::unique(_lits.begin(), _lits.end()), _lits.end());
    }

    auto Clause::from_dimacs(const vector<long long> & lits) -> Clause
    {
        vector<Literal> out;
        for (auto v : lits)
            out.push_back(Literal::from_dimacs(v));
        return Clause{ std::move(out) };
    }

    auto Clause::positive_count() const -> std::size_t
    {
        return std::count_if(_lits.begin(), _lits.end(), [] (const Literal & l) { return l.positive; });
    }

    auto Clause::is_tautology() const -> bool
    {
        for (size_t i = 1; i < _lits.size(); ++i)
            if (_lits[i - 1].var == _lits[i].var)
                return true;
        return false;
    }

    auto Clause::contains(Literal l) const -> bool
    {
        return std::binary_search(_lits.begin(), _lits.end(), l);
    }

    auto Clause::max_var() const -> uint32_t
    {
        return _lits.empty() ? 0 : _lits.back().var;
    }

    auto Clause::satisfied_by(const vector<std::uint8_t> & a) const -> bool
    {
        for (auto & l : _lits)
            if ((a[l.var] != 0) == l.positive)
                return true;
        return false;
    }

    auto Clause::to_string() const -> string
    {
        string s = "{";
        for (size_t i = 0; i < _lits.size(); ++i) {
            if (i)
                s += ", ";
            s += std::to_string(_lits[i].to_dimacs());
        }
        return s + "}";
    }

    auto operator<=> (const Clause & a, const Clause & b) -> std::strong_ordering
    {
        if (auto c = a._lits.size() <=> b._lits.size(); c != 0)
            return c;
        return a._lits <=> b._lits;
    }

    auto resolve(const Clause & a, const Clause & b, Literal on) -> Clause
    {
        vector<Literal> lits;
        lits.reserve(a.width() + b.width());
        for (auto & l : a.literals())
            if (l != on)
                lits.push_back(l);
        for (auto & l : b.literals())
            if (l != ~on)
                lits.push_back(l);
        return Clause{ std::move(lits) };
    }

    auto ClauseHash::operator() (const Clause & c) const -> std::size_t
    {
        std::size_t h = 0xcbf29ce484222325ull;
        for (auto & l : c.literals()) {
            h ^= static_cast<std::size_t>(l.to_dimacs() + (1ll << 40));
            h *= 0x100000001b3ull;
        }
        return h;
    }

    auto CnfFormula::add(Clause c) -> void
    {
        num_vars = std::max(num_vars, c.max_var());
        clauses.push_back(std::move(c));
    }

    auto CnfFormula::validate() const -> void
    {
        for (auto & c : clauses)
            if (c.max_var() > num_vars)
                throw UsageError("clause " + c.to_string() + " uses a variable beyond num_vars = " + std::to_string(num_vars));
    }

    auto CnfFormula::max_width() const -> std::size_t
    {
        std::size_t w = 0;
        for (auto & c : clauses)
            w = std::max(w, c.width());
        return w;
    }

    auto CnfFormula::normalize() -> void
    {
        std::sort(clauses.begin(), clauses.end());
        clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
    }

    auto read_dimacs(std::istream & in) -> CnfFormula
    {
        CnfFormula f;
        string line;
        bool header = false;
        long long declared_clauses = 0;
        vector<long long> current;
        while (std::getline(in, line)) {
            std::istringstream ls{ line };
            string first;
            if (! (ls >> first) || first[0] == 'c' || first[0] == '%')
                continue;
            if (first == "p") {
                string kind;
                long long vars;
                if (! (ls >> kind >> vars >> declared_clauses) || kind != "cnf" || vars < 0)
                    throw UsageError("bad DIMACS header '" + line + "'");
                f.num_vars = static_cast<uint32_t>(vars);
                header = true;
                continue;
            }
            if (! header)
                throw UsageError("DIMACS clause before 'p cnf' header");
            std::istringstream all{ line };
            long long v;
            while (all >> v) {
                if (v == 0) {
                    f.clauses.push_back(Clause::from_dimacs(current));
                    current.clear();
                }
                else
                    current.push_back(v);
            }
            if (! all.eof())
                throw UsageError("bad DIMACS clause line '" + line + "'");
        }
        if (! current.empty())
            f.clauses.push_back(Clause::from_dimacs(current));
        if (! header)
            throw UsageError("missing DIMACS header");
        f.validate();
        return f;
    }

    auto read_dimacs_file(const string & path) -> CnfFormula
    {
        std::ifstream in{ path };
        if (! in)
            throw UsageError("cannot open '" + path + "'");
        return read_dimacs(in);
    }

    auto write_dimacs(const CnfFormula & f) -> string
    {
        std::ostringstream out;
        out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
        for (auto & c : f.clauses) {
            for (auto & l : c.literals())
                out << l.to_dimacs() << " ";
            out << "0\n";
        }
        return out.str();
    }

    auto satisfies(const CnfFormula & f, const vector<std::uint8_t> & assignment) -> bool
    {
        return std::all_of(f.clauses.begin(), f.clauses.end(), [&] (const Clause & c) { return c.satisfied_by(assignment); });
    }

    auto brute_force_model(const CnfFormula & f) -> std::optional<vector<std::uint8_t>>
    {
        if (f.num_vars > 26)
            throw UsageError("brute force limited to 26 variables");
        vector<std::uint8_t> a(f.num_vars + 1, 0);
        for (std::uint64_t bits = 0; bits < (std::uint64_t{ 1 } << f.num_vars); ++bits) {
            for (uint32_t v = 1; v <= f.num_vars; ++v)
                a[v] = (bits >> (v - 1)) & 1;
            if (satisfies(f, a))
                return a;
        }
        return std::nullopt;
    }
}
