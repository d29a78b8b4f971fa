#include <pclab/harness/config.hpp>
#include <pclab/errors.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

using std::optional;
using std::string;
using std::vector;

namespace pclab
{
    namespace
    {
        auto trim(const string & s) -> string
        {
            auto is_space = [] (unsigned char c) { return std::isspace(c) != 0; };
            auto b = std::find_if_not(s.begin(), s.end(), is_space);
            auto e = std::find_if_not(s.rbegin(), s.rend(), is_space).base();
            return b < e ? string(b, e) : string{};
        }
    }

    auto KeyValueConfig::parse(std::istream & in, const string & source) -> KeyValueConfig
    {
        KeyValueConfig c;
        c._source = source;
        string line;
        int number = 0;
        while (std::getline(in, line)) {
            ++number;
            auto cut = line.find_first_of("#;");
            if (cut != string::npos)
                line.erase(cut);
            line = trim(line);
            if (line.empty())
                continue;
            auto eq = line.find('=');
            if (eq == string::npos)
                throw UsageError(source + ":" + std::to_string(number) + ": expected key=value");
            auto key = trim(line.substr(0, eq));
            if (key.empty())
                throw UsageError(source + ":" + std::to_string(number) + ": empty key");
            c._values[key] = trim(line.substr(eq + 1));
        }
        return c;
    }

    auto KeyValueConfig::read(const string & path) -> KeyValueConfig
    {
        std::ifstream in{ path };
        if (! in)
            throw UsageError("cannot open config file '" + path + "'");
        return parse(in, path);
    }

    auto KeyValueConfig::get(const string & key) const -> optional<string>
    {
        auto it = _values.find(key);
        if (it == _values.end())
            return std::nullopt;
        return it->second;
    }

    auto KeyValueConfig::get_int(const string & key) const -> optional<long long>
    {
        auto v = get(key);
        if (! v)
            return std::nullopt;
        long long out = 0;
        auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
        if (ec != std::errc{} || ptr != v->data() + v->size())
            throw UsageError(_source + ": '" + key + "' is not an integer");
        return out;
    }

    auto KeyValueConfig::get_double(const string & key) const -> optional<double>
    {
        auto v = get(key);
        if (! v)
            return std::nullopt;
        try {
            size_t used = 0;
            double out = std::stod(*v, &used);
            if (used != v->size())
                throw std::invalid_argument(key);
            return out;
        }
        catch (const std::logic_error &) {
            throw UsageError(_source + ": '" + key + "' is not a number");
        }
    }

    auto KeyValueConfig::get_bool(const string & key) const -> optional<bool>
    {
        auto v = get(key);
        if (! v)
            return std::nullopt;
        if (*v == "1" || *v == "true" || *v == "yes" || *v == "on")
            return true;
        if (*v == "0" || *v == "false" || *v == "no" || *v == "off")
            return false;
        throw UsageError(_source + ": '" + key + "' is not a boolean");
    }

    auto split_list(const string & text) -> vector<string>
    {
        vector<string> out;
        std::stringstream in{ text };
        string item;
        while (std::getline(in, item, ','))
            if (auto t = trim(item); ! t.empty())
                out.push_back(t);
        return out;
    }

    auto split_int_list(const string & text) -> vector<int>
    {
        vector<int> out;
        for (auto & item : split_list(text)) {
            int v = 0;
            auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
            if (ec != std::errc{} || ptr != item.data() + item.size())
                throw UsageError("'" + item + "' is not an integer");
            out.push_back(v);
        }
        return out;
    }

    auto quote_command_line(const vector<string> & args) -> string
    {
        string out;
        for (auto & a : args) {
            if (! out.empty())
                out += ' ';
            bool plain = ! a.empty() && std::all_of(a.begin(), a.end(), [] (unsigned char c) {
                return std::isalnum(c) || std::string_view{ "-_=.,:/+@" }.find(char(c)) != std::string_view::npos;
            });
            if (plain)
                out += a;
            else {
                out += '\'';
                for (char c : a)
                    out += c == '\'' ? string{ "'\\''" } : string(1, c);
                out += '\'';
            }
        }
        return out;
    }
}
