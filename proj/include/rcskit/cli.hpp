#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rcskit::cli {

/// Exit-code contract of the command-line tool.
enum ExitCode : int { kOk = 0, kInputError = 2, kNumericFailure = 3 };

struct FitDistArgs {
    std::string input;
    std::string families = "all";
    std::string out;
};

struct FitPlArgs {
    std::string input;
    double geom_a = 0.7;
    std::string model = "all";
    std::string out;
};

struct SimulateArgs {
    std::string spec;
    std::string out_samples;
    std::string out_report;
    std::optional<std::uint64_t> seed;
};

struct PlotDataArgs {
    std::string report;
    std::string kind;
    std::size_t grid = 100;
    std::string out;
};

int cmd_fit_dist(const FitDistArgs& args, std::ostream& err);
int cmd_fit_pl(const FitPlArgs& args, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& err);
int cmd_plotdata(const PlotDataArgs& args, std::ostream& err);

/// Parses argv (argv[0] is the program name) and dispatches to a subcommand.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace rcskit::cli
