#pragma once

#include <stdexcept>
#include <string>

namespace gwi {

enum class ErrorCode {
    InvalidParams = 10,
    InvalidArgument = 11,
    CaseMismatch = 12,
    InadmissibleM = 13,
    StateBlowup = 14,
    ParseError = 15,
    NoFixedPoint = 16,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace gwi
