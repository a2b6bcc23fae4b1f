#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ckfractal {

enum class ErrorKind {
    NonBinaryEntry,
    MissingDiagonal,
    Reducible,
    DeadRow,
    NotSquare,
    EmptyWord,
    NotInDomain,
    LevelTooLow,
    InadmissibleWord,
    NoConvergence,
    MatrixMismatch,
    NonPositiveWeight,
    NotComposable,
    IndexOutOfRange,
    NegativePotential,
    CapExceeded,
    WordTooShort,
    SinkFound,
    BaseEdgeMismatch,
    LevelOutOfRange,
    MultiplePaths,
    Parse,
    Usage,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library is reported through this exception; the kind
/// drives the CLI exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace ckfractal
