#ifndef HEDGEHOG_CLI_HPP
#define HEDGEHOG_CLI_HPP

#include <string>

#include "hedgehog/json_io.hpp"

namespace hedgehog::cli {

struct Options {
    long search_bound = 1000;
    long factor_bound = 1000000;
};

struct Result {
    Json response;
    int exit_code = 0; // 0 ok, 1 unknown, 2 error
};

/// Dispatches one request; never throws (errors become the error envelope).
Result run_command(const std::string& command, const Json& payload, const Options& opt = {});

/// Full process entry point: argv parsing, stdin/--input, stdout response.
int run_main(int argc, const char* const* argv);

} // namespace hedgehog::cli

#endif
