#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pclab
{
    // Line-oriented "key = value" settings. '#' and ';' start comments; blank lines are ignored.
    class KeyValueConfig
    {
        public:
            static auto parse(std::istream & in, const std::string & source = "<config>") -> KeyValueConfig;
            static auto read(const std::string & path) -> KeyValueConfig;

            auto has(const std::string & key) const -> bool { return _values.contains(key); }
            auto get(const std::string & key) const -> std::optional<std::string>;
            auto get_int(const std::string & key) const -> std::optional<long long>;
            auto get_double(const std::string & key) const -> std::optional<double>;
            auto get_bool(const std::string & key) const -> std::optional<bool>;
            auto values() const -> const std::map<std::string, std::string> & { return _values; }
            auto set(const std::string & key, const std::string & value) -> void { _values[key] = value; }

        private:
            std::map<std::string, std::string> _values;
            std::string _source;
    };

    // "a,b, c" -> {"a", "b", "c"}; empty items are dropped.
    auto split_list(const std::string & text) -> std::vector<std::string>;
    auto split_int_list(const std::string & text) -> std::vector<int>;

    // Shell-safe rendering of an argument vector, for recording reproducible command lines.
    auto quote_command_line(const std::vector<std::string> & args) -> std::string;
}
