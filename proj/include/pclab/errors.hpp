#pragma once

#include <stdexcept>
#include <string>

namespace pclab
{
    // Bad input or contract violation by the caller. The CLI maps this to exit code 2.
    class UsageError : public std::invalid_argument
    {
        public:
            explicit UsageError(const std::string & what) : std::invalid_argument(what) {}
    };

    // An operation that only makes sense over Q was asked to run over F_p.
    class UnsupportedField : public UsageError
    {
        public:
            explicit UnsupportedField(const std::string & what) : UsageError(what) {}
    };

    class DegreeOverflow : public UsageError
    {
        public:
            explicit DegreeOverflow(const std::string & what) : UsageError(what) {}
    };

    class Timeout : public std::runtime_error
    {
        public:
            Timeout() : std::runtime_error("timeout") {}
    };

    // A computation would exceed a configured size limit (monomial count, tuple count, ...).
    class ResourceLimit : public std::runtime_error
    {
        public:
            explicit ResourceLimit(const std::string & what) : std::runtime_error(what) {}
    };
}
