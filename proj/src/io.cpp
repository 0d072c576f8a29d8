#include "fbwave/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fbwave/error.hpp"

namespace fbwave::io {

namespace {

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += fmt(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ValidationError("CSV has no column '" + name + "'");
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) out.push_back(cell);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
  };
  if (!std::getline(in, line)) throw ValidationError("CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw ValidationError("CSV line " + std::to_string(lineno) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(table.header.size()));
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (c.empty() || end != c.c_str() + c.size()) {
        throw ValidationError("CSV line " + std::to_string(lineno) + ": cannot parse '" + c +
                              "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path)); }

std::string run_record_csv(const RunRecord& rec) {
  std::string out = "t,g,g_prime,sup_profile_error,min_U,max_U\n";
  for (const auto& r : rec.rows) append_row(out, {r.t, r.g, r.g_prime, r.sup_profile_error, r.min_U, r.max_U});
  return out;
}

std::vector<RunRow> run_rows_from_csv(const CsvTable& table) {
  const auto it = table.column("t");
  const auto ig = table.column("g");
  const auto igp = table.column("g_prime");
  const auto ie = table.column("sup_profile_error");
  const auto imin = table.column("min_U");
  const auto imax = table.column("max_U");
  std::vector<RunRow> rows;
  for (const auto& r : table.rows) {
    RunRow row;
    row.t = r[it];
    row.g = r[ig];
    row.g_prime = r[igp];
    row.sup_profile_error = r[ie];
    row.min_U = r[imin];
    row.max_U = r[imax];
    if (!rows.empty() && !(row.t > rows.back().t)) {
      throw ValidationError("run record times must be strictly increasing");
    }
    rows.push_back(row);
  }
  return rows;
}

std::string snapshot_csv(const Grid1D& grid, const Snapshot& snap) {
  std::string out = "y,U\n";
  for (std::size_t j = 0; j < snap.U.size(); ++j) {
    append_row(out, {grid.node(static_cast<int>(j)), snap.U[j]});
  }
  return out;
}

std::string trajectory_csv(const PhaseTrajectory& traj) {
  std::string out = "q,P\n";
  for (std::size_t i = 0; i < traj.q.size(); ++i) append_row(out, {traj.q[i], traj.p[i]});
  return out;
}

std::string profile_csv(const SemiWaveProfile& profile) {
  std::string out = "x,q\n";
  for (std::size_t i = 0; i < profile.x.size(); ++i) append_row(out, {profile.x[i], profile.q[i]});
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "delta,c_star,retreat_speed,residual,bracket_low,iterations\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& row : rows) {
    if (row.result) {
      const auto& r = *row.result;
      append_row(out, {row.delta, r.c_star, r.retreat_speed, r.residual, r.bracket_low,
                       static_cast<double>(r.iterations)});
    } else {
      append_row(out, {row.delta, nan, nan, nan, nan, nan});
    }
  }
  return out;
}

std::string sequences_csv(const SequencePair& pair) {
  std::string out = "n,c_upper,c_lower,gap_upper,gap_lower,sup_upper,sup_lower\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::size_t n = std::max(pair.upper.c.size(), pair.lower.c.size());
  auto at = [&](const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : nan; };
  for (std::size_t i = 0; i < n; ++i) {
    const double cu = at(pair.upper.c, i);
    const double cl = at(pair.lower.c, i);
    append_row(out, {static_cast<double>(i), cu, cl, std::abs(cu - pair.c_star),
                     std::abs(cl - pair.c_star), at(pair.upper.sup_dist, i),
                     at(pair.lower.sup_dist, i)});
  }
  return out;
}

std::string convergence_csv(const ConvergenceReport& rep) {
  std::string out = "t,speed_error,profile_error\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < rep.speed_error_series.size(); ++i) {
    const double pe = i < rep.profile_error_series.size() ? rep.profile_error_series[i].value : nan;
    append_row(out, {rep.speed_error_series[i].t, rep.speed_error_series[i].value, pe});
  }
  return out;
}

nlohmann::json speed_json(const SpeedResult& res) {
  return {
      {"reaction", res.reaction},
      {"d", res.d},
      {"delta", res.delta},
      {"c_star", res.c_star},
      {"retreat_speed", res.retreat_speed},
      {"residual", res.residual},
      {"bracket_low", res.bracket_low},
      {"bracket_high", res.bracket_high},
      {"iterations", res.iterations},
      {"slope_at_zero", res.profile.slope_at_zero},
      {"tail_rate", res.profile.tail_rate},
  };
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace fbwave::io
