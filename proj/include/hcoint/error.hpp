#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcoint {

enum class ErrorCode {
    InvalidArgument,
    Schema,
    DCapExceeded,
    IndexOutOfRange,
    NoUnitEigenvalue,
    NoUnitRoot,
    SingularOnCircle,
    RadiusTooLarge,
    AttractorMismatch,
    SeriesTooShort,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Library failure carrying a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hcoint
