#pragma once

// Sweep, comparison, figure and validation drivers behind the CLI.

#include "noisefid/channels.hpp"
#include "noisefid/oracle.hpp"
#include "noisefid/protocols.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace noisefid::harness {

/// Bad user input: unknown names, malformed ranges, incomplete parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Parameter ranges

struct RangeSpec {
  double start = 0.0;
  double stop = 0.0;
  std::optional<double> step;
  std::optional<std::size_t> count;

  /// Grid values. With a step, the last point is snapped onto `stop` when it
  /// lands within 1e-9 of it; with a count the grid is evenly spaced and
  /// includes both ends.
  std::vector<double> values() const;
  void validate() const;
};

/// "v", "start:stop:step" or "start:stop#count".
RangeSpec parse_range(std::string_view text);

struct ParamRange {
  std::string name;
  RangeSpec range;
};

/// "name=range" as given to --param.
ParamRange parse_param_flag(std::string_view text);

// ---------------------------------------------------------------------------
// Channel families

enum class Family {
  Identity,
  AD,
  PD,
  CR,
  CD,
  Pauli,
  Depolarizing,
  BitFlip,
  PhaseFlip,
  BitPhaseFlip,
  SGAD,
  SGADPhysical,
};

std::string_view to_string(Family f);
/// Accepts the to_string names, case-insensitively, plus a few aliases
/// ("bitflip", "sgad-physical", ...).
Family parse_family(std::string_view text);

/// Parameter names the family needs for `spec`. For CR/CD the per-slot
/// names are listed; a bare "theta"/"phi" binding covers every slot.
std::vector<std::string> family_params(Family f, const ProtocolSpec& spec);

struct PointSetup {
  NoiseAssignment noise;
  std::optional<oracle::FormulaKey> key;
  oracle::Params oracle_params;
};

/// Builds the noise for one parameter point. Throws ConfigError when a
/// parameter is missing and ParameterError when it is out of range.
PointSetup setup_point(const ProtocolSpec& spec, Family family,
                       const std::vector<NamedParam>& point);

// ---------------------------------------------------------------------------
// Records and CSV

struct FidelityRecord {
  std::string protocol;
  std::string channel;
  std::vector<NamedParam> params;
  double fidelity_numeric = 0.0;
  std::optional<double> fidelity_analytic;
  std::optional<double> abs_diff;
};

/// 12 significant digits, '.' separator, "nan" for non-finite values,
/// negative zero printed as 0.
std::string format_number(double v);

void write_csv(std::ostream& os, const std::vector<FidelityRecord>& records);

// ---------------------------------------------------------------------------
// sweep

struct SweepConfig {
  std::string protocol;
  std::string channel;
  std::vector<ParamRange> params;
  std::string out;       ///< empty: caller decides (the CLI writes stdout)
  unsigned threads = 1;  ///< 0: hardware concurrency

  void validate() const;
};

/// Evaluates every grid point (first parameter varies slowest). Results are
/// merged by grid index, so the output does not depend on `threads`.
std::vector<FidelityRecord> run_sweep(const SweepConfig& cfg);

/// run_sweep + write_csv to cfg.out.
void cmd_sweep(const SweepConfig& cfg);

/// Reads a JSON document mirroring SweepConfig. Parameters may be given as
/// range strings or objects {"start", "stop", "step"|"count"}.
SweepConfig load_sweep_config(const std::filesystem::path& path);
SweepConfig sweep_config_from_json(std::string_view json_text);

// ---------------------------------------------------------------------------
// compare

using OracleFn = std::function<double(const oracle::FormulaKey&, const oracle::Params&)>;

struct ComparePoint {
  std::string label;  ///< e.g. "bit_flip" for a Pauli variant
  oracle::Params params;
  double numeric = 0.0;
  double analytic = 0.0;
  double abs_diff = 0.0;
};

struct KeyComparison {
  oracle::FormulaKey key;
  std::size_t points = 0;
  double max_abs_diff = 0.0;
  bool pass = false;
  std::vector<ComparePoint> failures;
};

struct CompareReport {
  double tolerance = 0.0;
  int grid = 0;
  std::vector<KeyComparison> keys;
  /// SGAD keys at general parameter points whose difference exceeds the
  /// discrepancy threshold. Reported only; they never fail the run.
  std::vector<std::pair<oracle::FormulaKey, ComparePoint>> sgad_discrepancies;

  bool any_non_sgad_failure() const;
};

struct CompareOptions {
  int grid = 21;
  double tolerance = 1e-9;
  std::size_t sgad_general_points = 20;
  double sgad_discrepancy_threshold = 1e-6;
  std::uint64_t seed = 20160501;
  OracleFn oracle;  ///< empty: oracle::eval
};

/// Engine against closed forms for every FormulaKey. SGAD keys are judged on
/// their AD-limit points only.
CompareReport cmd_compare(const CompareOptions& opts = {});
void print_compare_report(std::ostream& os, const CompareReport& report);

// ---------------------------------------------------------------------------
// figure

struct Table {
  std::string name;  ///< file stem, e.g. "fig1a"
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_table(std::ostream& os, const Table& table);

struct FigureOptions {
  int grid = 101;          ///< points along a 2-D panel axis
  int contour_grid = 61;   ///< points per axis for contour grids
  /// Bindings for the (f) panels: x, r, Phi, Q required; p optional; gt is
  /// the gamma0*t axis range.
  std::vector<ParamRange> bindings;
};

const std::vector<std::string>& figure_ids();

/// Throws ConfigError for unknown ids or missing (f) bindings.
std::vector<Table> make_figure(std::string_view id, const FigureOptions& opts = {});

/// Writes each table to out_dir/<name>.csv and returns the paths.
std::vector<std::filesystem::path> cmd_figure(std::string_view id,
                                              const std::filesystem::path& out_dir,
                                              const FigureOptions& opts = {});

// ---------------------------------------------------------------------------
// validate

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CheckResult> cmd_validate();
void print_checks(std::ostream& os, const std::vector<CheckResult>& checks);

}  // namespace noisefid::harness
