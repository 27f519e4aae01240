#pragma once

#include <stdexcept>
#include <string>

namespace stud {

enum class ErrorCode {
    invalid_argument,
    io,
    format,
    alignment,
    config,
    numeric,
    runtime,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::io: return "io";
        case ErrorCode::format: return "format";
        case ErrorCode::alignment: return "alignment";
        case ErrorCode::config: return "config";
        case ErrorCode::numeric: return "numeric";
        case ErrorCode::runtime: return "runtime";
    }
    return "unknown";
}

}  // namespace stud
