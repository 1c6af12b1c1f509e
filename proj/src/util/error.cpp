#include "plotforge/error.hpp"

namespace plotforge {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::SchemaError: return "SCHEMA_ERROR";
    case ErrorCode::UnresolvedRef: return "UNRESOLVED_REF";
    case ErrorCode::InvalidRange: return "INVALID_RANGE";
    case ErrorCode::LogNonpositive: return "LOG_NONPOSITIVE";
    case ErrorCode::ArrayMismatch: return "ARRAY_MISMATCH";
    case ErrorCode::DuplicateId: return "DUPLICATE_ID";
    case ErrorCode::OrientationConflict: return "ORIENTATION_CONFLICT";
    case ErrorCode::InvalidStyle: return "INVALID_STYLE";
    case ErrorCode::InvalidValue: return "INVALID_VALUE";
    case ErrorCode::MissingDataFile: return "MISSING_DATA_FILE";
    case ErrorCode::BadPath: return "BAD_PATH";
    case ErrorCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::TypeMismatch: return "TYPE_MISMATCH";
    case ErrorCode::EndWithoutBegin: return "END_WITHOUT_BEGIN";
    case ErrorCode::LogNonpositiveValue: return "LOG_NONPOSITIVE_VALUE";
    case ErrorCode::SpanTooSmall: return "SPAN_TOO_SMALL";
    case ErrorCode::BadPattern: return "BAD_PATTERN";
    case ErrorCode::CanvasTooSmall: return "CANVAS_TOO_SMALL";
    case ErrorCode::RectOutsidePlot: return "RECT_OUTSIDE_PLOT";
    case ErrorCode::SessionClosed: return "SESSION_CLOSED";
    case ErrorCode::IoFailure: return "IO_FAILURE";
    case ErrorCode::ProtocolError: return "PROTOCOL_ERROR";
    }
    return "UNKNOWN";
}

std::string ErrorInfo::describe() const
{
    std::string out;
    if (!path.empty()) {
        out += path;
        out += ": ";
    }
    out += to_string(code);
    if (!message.empty()) {
        out += ": ";
        out += message;
    }
    return out;
}

Error::Error(ErrorCode code, std::string path, std::string message)
    : Error(ErrorInfo{code, std::move(path), std::move(message)})
{
}

Error::Error(ErrorInfo info)
    : std::runtime_error(info.describe()), info_(std::move(info))
{
}

}  // namespace plotforge
