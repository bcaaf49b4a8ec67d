#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heiswhit/divdiff.hpp"
#include "heiswhit/profile.hpp"
#include "heiswhit/whitney.hpp"

namespace heiswhit::cli {

enum class Mode { check_c1, check_cm, check_cm_w, synthesize, finiteness };
enum class InputFormat { csv, json };

/// "check-c1", "check-cm", "check-cm-w", "synthesize", "finiteness".
Mode parse_mode(std::string_view name);
const char* to_string(Mode mode);

struct RunConfig {
  Mode mode = Mode::check_cm;
  std::optional<int> m;    // falls back to the input's "m", then 1
  std::optional<double> tol;  // absolute verdict tolerance
  int window = 0;          // 0 means 2m + 4
  double delta_ratio = 0.5;
  std::string omega = "power:1:1";
  bool full_enum = false;
  bool force = false;      // synthesize without a consistent check-cm verdict
  std::string input;
  std::string report;      // JSON report; empty means standard output
  std::string grid_out;    // synthesize only
  std::string plot_out;    // delta,value,series CSV of every profile
  std::size_t grid_samples = 1001;
};

/// Exit codes of run().
inline constexpr int kExitConsistent = 0;
inline constexpr int kExitInconsistent = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitError = 3;

struct ParsedInput {
  SampledCurve curve;
  std::optional<int> m;
};

/// CSV with header "t,x,y,z" (LF or CRLF). Rows may come in any order;
/// repeated t throws DuplicateNodes, malformed rows ParseError.
ParsedInput parse_csv(std::string_view text);
/// {"samples":[{"t":..,"x":..,"y":..,"z":..},...]} with an optional "m".
ParsedInput parse_json(std::string_view text);
ParsedInput read_input(const std::string& path, std::optional<InputFormat> format = std::nullopt);
SampledCurve parse_input(const std::string& path, InputFormat format);

/// JSON text that parse_json reads back bit for bit.
std::string write_json(const SampledCurve& curve, std::optional<int> m = std::nullopt);

/// "power:<c>:<s>".
ModulusFn parse_omega(std::string_view text);

/// Throws ConfigError for settings no pipeline accepts.
void validate(const RunConfig& config, int m);

struct NamedProfile {
  std::string series;
  Profile profile;
};

/// CSV "delta,value,series", rows ordered by series name and then by delta
/// descending. Throws IoError for an empty profile set (nothing is written)
/// or an unwritable path.
void emit_plot_data(const std::vector<NamedProfile>& profiles, const std::string& path);

/// Runs the configured pipeline and returns the exit code. Errors are
/// reported on `err` and mapped to kExitError.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Flag parsing front end; every flag also reads HEISWHIT_<FLAG>.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heiswhit::cli
