#ifndef CIRCDIAM_COMMANDS_HPP
#define CIRCDIAM_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace circdiam::cli {

enum ExitCode : int
{
    Success = 0,
    VerificationFailure = 1,
    InputError = 2,
};

struct Options
{
    std::string command;
    std::string input;
    std::string from;
    std::string to;
    std::optional<std::size_t> cap;
    std::string mode = "circuit";
    bool certified = false;
    bool constructive = false;   ///< verify: also run node-0 walks
    std::size_t trials = 10;
    std::size_t m = 3;
    std::size_t n = 3;
    std::string density = "vary";
    std::uint64_t seed = 1;
    std::string format = "text";
    std::string output;
    std::string walk;
    bool timing = false;
};

/** Output of one subcommand; rationals inside `results` are "p/q" strings. */
struct RunReport
{
    std::string command;
    std::string inputs_digest;
    nlohmann::json results;
    std::optional<double> timing_ms;
    int exit_code = Success;

    nlohmann::json to_json() const;
};

RunReport cmd_circuits(const Options& opt);
RunReport cmd_vertices(const Options& opt);
RunReport cmd_distance(const Options& opt);
RunReport cmd_diameter(const Options& opt);
RunReport cmd_dtp_walk(const Options& opt);
RunReport cmd_verify(const Options& opt);
RunReport cmd_gen(const Options& opt);

/** Dispatch on opt.command; library errors propagate. */
RunReport dispatch(const Options& opt);

std::string render_text(const RunReport& report);

/**
 * Full command line handling: parses args (without the program name), runs
 * the subcommand, prints the report and returns the exit code. Input errors
 * print a message to `err` and return InputError.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circdiam::cli

#endif
