#pragma once

// Front end for the TV recovery experiment: configuration (defaults < config
// file < flags), CSV trace output, and the run driver behind `badmm_run`.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "badmm/solver.hpp"

namespace badmm::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitIo = 2, kExitSolver = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help / -h; carries the rendered help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RegSelection { L1, LHalf, Both };
enum class StrategySelection { ClosedForm, ProxLinear };

struct RunConfig {
  std::size_t n = 512;
  std::size_t m = 256;
  double lambda = 0.015;
  double alpha = 10.0;
  double mu = 10.0;
  RegSelection reg = RegSelection::Both;
  std::uint64_t seed = 1;
  std::size_t jumps = 20;
  double noise_sigma = 0.0;
  std::size_t max_iters = 5000;
  double tol = 1e-8;
  StrategySelection strategy = StrategySelection::ClosedForm;
  std::string output_path = "badmm_out";
  bool diagnostics = true;
  bool timestamp = true;
  bool quiet = false;
  std::optional<std::string> config_file;
};

/// Reads flat `key=value` lines ('#' starts a comment). Keys are the long
/// flag names without dashes; '_' and '-' are interchangeable.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// args excludes the program name. Throws UsageError or HelpRequested.
RunConfig parse_config(const std::vector<std::string>& args);

/// The 15 columns of a trace row, in file order.
inline constexpr std::array<const char*, 15> kCsvColumns = {
    "k",     "L_alpha", "L_hat", "primal_residual", "dx",          "dy",             "dp",
    "mse_x", "mse_y",   "m10",   "m11",             "mAux",        "stat_grad_x",    "stat_subdiff_y",
    "stat_primal"};

using CsvMetadata = std::vector<std::pair<std::string, std::string>>;

/// Config values, measured constants, α-rule verdict and seed, as '#' header lines.
CsvMetadata make_metadata(const RunConfig& cfg, std::string_view solver_name,
                          const SolveResult& result);

/// Writes '#key=value' lines, the column header, then one row per record with
/// 17 significant digits. Missing optional values are empty fields. Throws IoError.
void emit_csv(const std::vector<IterationRecord>& trace, const CsvMetadata& meta,
              const std::string& path);

struct ParsedCsv {
  CsvMetadata meta;
  std::vector<std::array<std::optional<double>, 15>> rows;
};

/// Inverse of emit_csv. Throws IoError on unreadable or malformed files.
ParsedCsv read_csv(const std::string& path);

/// Builds the instance, runs the selected solver(s), writes hadmm.csv /
/// sadmm.csv and summary.txt under cfg.output_path. Returns an ExitCode.
int run_experiment(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_config + run_experiment with exit-code mapping.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace badmm::cli
