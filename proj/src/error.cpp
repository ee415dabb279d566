#include "gwi/error.hpp"

namespace gwi {

const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidParams: return "invalid_params";
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::CaseMismatch: return "case_mismatch";
        case ErrorCode::InadmissibleM: return "inadmissible_m";
        case ErrorCode::StateBlowup: return "state_blowup";
        case ErrorCode::ParseError: return "parse_error";
        case ErrorCode::NoFixedPoint: return "no_fixed_point";
    }
    return "unknown";
}

}  // namespace gwi
