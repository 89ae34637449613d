#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cavmem/dynamics.hpp"
#include "cavmem/loading.hpp"
#include "cavmem/reflection.hpp"
#include "cavmem/sweep.hpp"

namespace cavmem {

// CSV cells: reals with 12 significant digits in scientific notation,
// comma-separated, LF line endings, one header row. Re-running the same
// configuration yields byte-identical files.
std::string fmt_real(double x);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(const Table& table, const std::filesystem::path& path);

Table to_table(const SweepResult& result);
Table to_table(const BandwidthResult& result);
Table to_table(const PopulationResult& result);
Table to_table(const AmplitudeTrajectory& traj);
Table to_table(const ReflectionSpectrum& rs, const PhaseReport& pr);
Table to_table(const LoadingReport& report);

void emit_csv(const SweepResult& result, const std::filesystem::path& path);
void emit_csv(const BandwidthResult& result, const std::filesystem::path& path);
void emit_csv(const PopulationResult& result, const std::filesystem::path& path);
void emit_csv(const AmplitudeTrajectory& traj, const std::filesystem::path& path);
void emit_csv(const ReflectionSpectrum& rs, const PhaseReport& pr,
              const std::filesystem::path& path);
void emit_csv(const LoadingReport& report, const std::filesystem::path& path);

// Self-contained SVG of the (P_herald_ave, F_ave) trajectories, one polyline
// per scheme, the C_pi point drawn at twice the marker radius, extremal C
// labeled, axes auto-fit with 5% margins.
void emit_svg(const SweepResult& result, const std::filesystem::path& path);
void emit_svg(const BandwidthResult& result, const std::filesystem::path& path);

}  // namespace cavmem
