#include <texkit/error.hpp>

namespace texkit {

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::IoError: return "IoError";
        case Errc::UnsupportedFormat: return "UnsupportedFormat";
        case Errc::CorruptFile: return "CorruptFile";
        case Errc::InvalidDimensions: return "InvalidDimensions";
        case Errc::InvalidLevels: return "InvalidLevels";
        case Errc::InvalidBinCount: return "InvalidBinCount";
        case Errc::EmptyHistogram: return "EmptyHistogram";
        case Errc::NoValidPairs: return "NoValidPairs";
        case Errc::EmptyTrainingSet: return "EmptyTrainingSet";
        case Errc::SingleClass: return "SingleClass";
        case Errc::EmptyMatrix: return "EmptyMatrix";
        case Errc::RaggedRow: return "RaggedRow";
        case Errc::UnknownExhausted: return "UnknownExhausted";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::UnknownTrueLabel: return "UnknownTrueLabel";
        case Errc::ClassTooSmall: return "ClassTooSmall";
        case Errc::VersionMismatch: return "VersionMismatch";
        case Errc::SchemaMismatch: return "SchemaMismatch";
        case Errc::CorruptModel: return "CorruptModel";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace texkit
