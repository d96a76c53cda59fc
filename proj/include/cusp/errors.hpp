#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cusp {

enum class ErrorKind {
    NotNilpotent,
    NotUnipotent,
    EmptyInput,
    ZeroVector,
    Singular,
    BadParams,
    DegenerateTangent,
    NotAbelian,
    ComplexSpectrum,
    IllConditioned,
    Unrecognized,
    NotConvex,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

/** @brief Exception carrying a machine-readable kind. */
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace cusp
