#pragma once

#include <stdexcept>
#include <string>

namespace privnet {

// Error classes map 1:1 onto CLI exit codes so batch callers can
// distinguish failure modes without parsing messages.
enum class ErrorCode : int {
    Usage = 1,          // bad flags / unknown subcommand
    Config = 2,         // invalid configuration values
    Input = 3,          // missing or unreadable input
    LabelsRequired = 4, // evaluation on an unlabeled corpus
    Corpus = 5,         // fatal corpus defect (duplicate doc id, bad header)
    Io = 6,             // unwritable output
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::Usage: return "usage";
    case ErrorCode::Config: return "config";
    case ErrorCode::Input: return "input";
    case ErrorCode::LabelsRequired: return "labels-required";
    case ErrorCode::Corpus: return "corpus";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

} // namespace privnet
