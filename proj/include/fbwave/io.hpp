#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fbwave/fbsolver.hpp"
#include "fbwave/phaseplane.hpp"
#include "fbwave/speedfinder.hpp"
#include "fbwave/verify.hpp"

namespace fbwave::io {

/// 17 significant digits, so identical doubles always print identically.
std::string fmt(double v);

/// Writes the file, creating parent directories. Throws std::runtime_error.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// Comma-separated table with one header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;  // throws ValidationError
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);

std::string run_record_csv(const RunRecord& rec);
std::vector<RunRow> run_rows_from_csv(const CsvTable& table);

std::string snapshot_csv(const Grid1D& grid, const Snapshot& snap);
std::string trajectory_csv(const PhaseTrajectory& traj);
std::string profile_csv(const SemiWaveProfile& profile);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sequences_csv(const SequencePair& pair);
std::string convergence_csv(const ConvergenceReport& rep);

nlohmann::json speed_json(const SpeedResult& res);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace fbwave::io
