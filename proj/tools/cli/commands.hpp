#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace wedgeqft::cli {

enum ExitCode : int { exit_ok = 0, exit_contract = 1, exit_schema = 2 };

struct Options {
    std::string command;
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
};

const std::vector<std::string>& command_names();

// Runs one subcommand; diagnostics go to `log`.
int run(const Options& opts, std::ostream& log);

// Parses argv and runs; used by the executable and by tests.
int main_entry(int argc, const char* const* argv, std::ostream& log);

} // namespace wedgeqft::cli
