#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

// Command-line front end: `superlab <command> [--flag value]...`.
//
// Precedence: built-in defaults < `--config FILE` (one `key = value` per line,
// keys are flag names without the dashes) < flags given on the command line.
namespace superlab::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kUsageError = 2,
  kNumericalError = 3,
};

enum class OutputFormat { csv, svg, both };

/// Parameters shared by the subcommands; empty optionals take per-command defaults.
struct Params {
  std::optional<int> N;
  std::optional<double> g;
  std::optional<std::string> scaling;  // inverse_N | inverse_N2
  double scale = 1.0;                  // m omega_0 / hbar
  std::optional<double> L;
  double x = 0.0;
  std::optional<double> x_min, x_max;
  std::optional<int> points;
  std::optional<double> t_min, t_max;
  double t = 0.0;
  double c = 0.5;
  double mass_length_sq = 1.0;
  double a = 0.0, b = 0.0;
  std::optional<double> tol;
  std::string basis = "oscillator";
  int id = 0;
  std::vector<int> N_ladder;      // empty: figure default
  std::vector<double> g_values;   // empty: figure default
  std::optional<int> N_max;
  std::optional<int> quad_order;  // nodes per unit of y; falls back to SUPERLAB_QUAD_ORDER
};

struct RunConfig {
  std::string command;
  Params params;
  std::string output_dir = ".";
  OutputFormat format = OutputFormat::csv;
  int precision = 12;
};

/// Parses and runs one command (args exclude the program name). Tables go to
/// `out` for the computation commands; `fig` writes files under output_dir.
/// Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes fig<id>.csv / fig<id>*.svg and fig<id>.meta.txt for id in 1..5.
/// Throws std::invalid_argument on a bad id or parameters.
std::vector<std::string> run_fig(const RunConfig& config, std::ostream& err);

}  // namespace superlab::cli
