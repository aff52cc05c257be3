#include "hcoint/error.hpp"

namespace hcoint {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Schema: return "Schema";
        case ErrorCode::DCapExceeded: return "DCapExceeded";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::NoUnitEigenvalue: return "NoUnitEigenvalue";
        case ErrorCode::NoUnitRoot: return "NoUnitRoot";
        case ErrorCode::SingularOnCircle: return "SingularOnCircle";
        case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
        case ErrorCode::AttractorMismatch: return "AttractorMismatch";
        case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    }
    return "Unknown";
}

}  // namespace hcoint
