#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omdsim/dynamics.hpp"
#include "omdsim/game.hpp"

namespace omd {

// Shortest decimal form that round-trips the exact double (std::to_chars).
// The same value always prints the same bytes, which is what makes every
// CSV written here a pure function of the data it encodes.
std::string format_double(double v);

// Strict inverse of format_double; also accepts anything std::from_chars
// does (including nan/inf). Throws std::invalid_argument on trailing junk.
double parse_double(const std::string& s);

// A trace CSV as written by write_trace_csv: `# key=value` header lines in
// their original order, the column-name row, and the numeric data rows.
struct TraceCsv {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<Vec> rows;
};

// Serializes the per-iteration series of a finished run, one row per
// t = 1..T with columns
//
//   t, reg_x, reg_y, nash_gap, cce_gap, sigma_x, sigma_y,
//   step_norm_x, step_norm_y
//
// (cumulative regrets, the Nash gap of the iterate pair, max regret over t,
// cumulative second-order path lengths, and the per-step movement norms).
// `config` lines are written first as `# key=value`, in the given order;
// callers put whatever is needed to reproduce the run there.
void write_trace_csv(std::ostream& out,
                     const std::vector<std::pair<std::string, std::string>>& config,
                     const Trace& trace, const BimatrixGame& game);

TraceCsv read_trace_csv(std::istream& in);

// Extracts one column by name; throws std::invalid_argument naming the
// column when it is missing.
Vec column_values(const TraceCsv& csv, const std::string& name);

// Looks up a `# key=value` header entry; empty optional when absent.
std::optional<std::string> config_value(const TraceCsv& csv, const std::string& key);

}  // namespace omd
