#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plotforge {

enum class ErrorCode {
    // scene construction and validation
    SchemaError,
    UnresolvedRef,
    InvalidRange,
    LogNonpositive,
    ArrayMismatch,
    DuplicateId,
    OrientationConflict,
    InvalidStyle,
    InvalidValue,
    MissingDataFile,
    // property paths
    BadPath,
    IndexOutOfRange,
    TypeMismatch,
    // batching
    EndWithoutBegin,
    // axis math
    LogNonpositiveValue,
    SpanTooSmall,
    BadPattern,
    // layout / interaction
    CanvasTooSmall,
    RectOutsidePlot,
    // engine / io / protocol
    SessionClosed,
    IoFailure,
    ProtocolError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Plain-data description of a failure, safe to copy across threads and
/// to put on the wire.
struct ErrorInfo {
    ErrorCode code = ErrorCode::SchemaError;
    std::string path;  // property path or file the error refers to; may be empty
    std::string message;

    std::string describe() const;
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string path, std::string message);
    explicit Error(ErrorInfo info);

    ErrorCode code() const noexcept { return info_.code; }
    const std::string& path() const noexcept { return info_.path; }
    const ErrorInfo& info() const noexcept { return info_; }

private:
    ErrorInfo info_;
};

}  // namespace plotforge
