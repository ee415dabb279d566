#pragma once

#include <string>
#include <vector>

namespace gwi::cli {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

// args excludes the program name
CliResult run_cli(const std::vector<std::string>& args);

// rebuilds the argument vector from the "request" object of a JSON report
std::vector<std::string> request_to_args(const std::string& report_json);

}  // namespace gwi::cli
