#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace texkit {

/// Error categories raised by the library. Each value maps to one failure
/// contract; CLI tools translate any Error into exit code 2.
enum class Errc {
    IoError,
    UnsupportedFormat,
    CorruptFile,
    InvalidDimensions,
    InvalidLevels,
    InvalidBinCount,
    EmptyHistogram,
    NoValidPairs,
    EmptyTrainingSet,
    SingleClass,
    EmptyMatrix,
    RaggedRow,
    UnknownExhausted,
    LengthMismatch,
    UnknownTrueLabel,
    ClassTooSmall,
    VersionMismatch,
    SchemaMismatch,
    CorruptModel,
    InvalidArgument,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

} // namespace texkit
