#pragma once

#include <stdexcept>
#include <string>

namespace cfnl {

enum class ErrorKind {
    out_of_range,   // argument outside a documented domain
    reducible,      // modulus failed an irreducibility check
    not_primitive,  // supplied alpha does not generate F_q^*
    size_limit,     // problem size exceeds a method's limit
    io,             // file or cache problem
    parse,          // malformed input file
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace cfnl
