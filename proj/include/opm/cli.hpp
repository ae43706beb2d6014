#pragma once

#include "opm/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace opm::cli {

enum ExitCode { Ok = 0, Failure = 1, Precondition = 2, WindowInsufficient = 3 };

const std::vector<std::string>& commands();
const std::vector<std::string>& fixture_names();

struct Options {
    std::string command;
    std::optional<std::string> ring, operad, window, fixture;
    std::string format = "text";
    std::optional<std::string> op;
    std::vector<std::string> t, classes;
    std::optional<int> degree, weight, shift;
    bool timing = false;
    std::optional<std::string> job;  // JSON job document (stdin)
};

struct Outcome {
    int exit_code = Ok;
    std::string output;
};

// Job document of a bundled example: ring, operad, algebra, fragment if any.
io::ordered_json fixture_job(const std::string& name, const std::optional<std::string>& window);

// {"command", "ring", "operad", "algebra" | "presentation", "fragment", "params"}
Outcome run_job(const io::json& job, const std::string& format, bool timing = false);

// Assembles the job from a fixture, a job document and the flags, then runs it.
Outcome run(const Options& options);

}  // namespace opm::cli
