#ifndef QHNF_ERROR_HPP
#define QHNF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qhnf {

// Error categories map one-to-one onto CLI exit codes:
// precondition -> 2, verification -> 3, parse -> 4.
// internal means a broken invariant of the engine itself.
class Error : public std::runtime_error {
public:
    enum class Kind { parse, precondition, verification, internal };

    Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

inline Error parse_error(const std::string& msg)
{
    return Error(Error::Kind::parse, msg);
}

inline Error precondition_error(const std::string& msg)
{
    return Error(Error::Kind::precondition, msg);
}

inline Error verification_error(const std::string& msg)
{
    return Error(Error::Kind::verification, msg);
}

inline Error internal_error(const std::string& msg)
{
    return Error(Error::Kind::internal, msg);
}

} // namespace qhnf

#endif
