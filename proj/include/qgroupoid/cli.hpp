#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qgroupoid::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_usage = 2,
    exit_no_convergence = 3,
    exit_io = 4,
};

/// Environment variable naming the default directory for figure output.
inline constexpr const char* kOutputDirEnv = "QGROUPOID_OUTPUT_DIR";

/// Runs one command line (argv[0] is the program name) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Entropic index from text: an exact rational ("5/3", "-0.9", "2") converted
/// once to double, or any other decimal the C library accepts.
double parse_index(std::string_view text);

/// "lo:hi:n" -> n evenly spaced points from lo to hi inclusive.
std::vector<double> parse_grid(std::string_view spec);

/// %.17g: round-trips every double.
std::string format_double(double v);

/// Figure data as CSV text. id is fig1a, fig1b or fig2; `grid` applies to
/// the curve figures.
std::string figure_csv(std::string_view id, const std::vector<double>& grid);

/// Default z grid of the curve figures: -5 to 5 in steps of 0.05.
std::vector<double> default_figure_grid();

/// Writes `content` to `path` through a temporary sibling file and a rename,
/// so an interrupted write never leaves a partial file. Throws IoError.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace qgroupoid::cli
