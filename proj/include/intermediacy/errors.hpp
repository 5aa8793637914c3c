#ifndef intermediacy_errors_hpp
#define intermediacy_errors_hpp

#include <stdexcept>
#include <string>

namespace intermediacy {

enum class ErrorCode {
    InvalidArgument,
    ParseError,
    CycleDetected,
    SelfLoop,
    DuplicateEdge,
    UnknownNode,
    NoSourceTargetPath,
    TooLarge,
    WouldCreateCycle,
    PreconditionViolated,
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace intermediacy

#endif
