#pragma once

#include <stdexcept>
#include <string>

namespace prg {

// Every error carries a short kind tag; the CLI prints it in its JSON error object.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define PRG_ERROR(Name)                                                   \
    class Name : public Error {                                           \
    public:                                                               \
        explicit Name(const std::string& what) : Error(#Name, what) {}    \
    };

PRG_ERROR(CapExceeded)
PRG_ERROR(DivisibilityError)
PRG_ERROR(ParamMismatch)
PRG_ERROR(InvalidParameters)
PRG_ERROR(PreconditionFailed)
PRG_ERROR(NotASubgroup)
PRG_ERROR(NumericalFailure)
PRG_ERROR(NotDecomposable)
PRG_ERROR(BadModelShape)
PRG_ERROR(NotAnAbsoluteInvolution)
PRG_ERROR(NoSolution)
PRG_ERROR(ParseError)

#undef PRG_ERROR

} // namespace prg
