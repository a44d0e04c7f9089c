#include "omdsim/csv.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "omdsim/metrics.hpp"

namespace omd {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end)
    throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

void write_trace_csv(std::ostream& out,
                     const std::vector<std::pair<std::string, std::string>>& config,
                     const Trace& trace, const BimatrixGame& game) {
  const int horizon = trace.horizon();
  if (horizon < 1) throw std::invalid_argument("trace has no iterations");

  const RegretSeries reg = regret(trace, game);
  const PathLengths paths = path_lengths(trace);

  for (const auto& [key, value] : config) out << "# " << key << "=" << value << "\n";
  out << "t,reg_x,reg_y,nash_gap,cce_gap,sigma_x,sigma_y,step_norm_x,step_norm_y\n";
  for (int t = 1; t <= horizon; ++t) {
    const double gap = nash_gap(game, trace.x[t], trace.y[t]);
    const double cce = std::max(reg.reg_x[t], reg.reg_y[t]) / t;
    out << t << ',' << format_double(reg.reg_x[t]) << ','
        << format_double(reg.reg_y[t]) << ',' << format_double(gap) << ','
        << format_double(cce) << ',' << format_double(paths.sigma_x[t]) << ','
        << format_double(paths.sigma_y[t]) << ','
        << format_double(trace.step_norm_x[t]) << ','
        << format_double(trace.step_norm_y[t]) << '\n';
  }
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

TraceCsv read_trace_csv(std::istream& in) {
  TraceCsv csv;
  std::string line;
  bool have_columns = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t start = line.find_first_not_of(" \t", 1);
      if (start == std::string::npos) continue;
      const std::size_t eq = line.find('=', start);
      if (eq == std::string::npos)
        throw std::invalid_argument("malformed config line: '" + line + "'");
      csv.config.emplace_back(line.substr(start, eq - start), line.substr(eq + 1));
      continue;
    }
    if (!have_columns) {
      csv.columns = split_commas(line);
      have_columns = true;
      continue;
    }
    const std::vector<std::string> cells = split_commas(line);
    if (cells.size() != csv.columns.size())
      throw std::invalid_argument("row has " + std::to_string(cells.size()) +
                                  " cells, expected " +
                                  std::to_string(csv.columns.size()));
    Vec row(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) row[i] = parse_double(cells[i]);
    csv.rows.push_back(std::move(row));
  }
  if (!have_columns) throw std::invalid_argument("CSV has no header row");
  return csv;
}

Vec column_values(const TraceCsv& csv, const std::string& name) {
  const auto it = std::find(csv.columns.begin(), csv.columns.end(), name);
  if (it == csv.columns.end())
    throw std::invalid_argument("CSV has no column '" + name + "'");
  const std::size_t idx = static_cast<std::size_t>(it - csv.columns.begin());
  Vec out(csv.rows.size());
  for (std::size_t r = 0; r < csv.rows.size(); ++r) out[r] = csv.rows[r][idx];
  return out;
}

std::optional<std::string> config_value(const TraceCsv& csv, const std::string& key) {
  for (const auto& [k, v] : csv.config)
    if (k == key) return v;
  return std::nullopt;
}

}  // namespace omd
