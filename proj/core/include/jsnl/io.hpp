#pragma once

#include <filesystem>
#include <string>

#include "jsnl/grid.hpp"

namespace jsnl {

/// Snapshot container format: 16-byte header (magic "JSNL", version u32,
/// N u32, reserved u32), then little-endian float64 payload — N values for a
/// density, 2N interleaved re/im for a wave. The kind is recovered from the
/// payload size.
inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_density_binary(const std::filesystem::path& path, const DensityField& field);
void write_wave_binary(const std::filesystem::path& path, const WaveField& field);

DensityField read_density_binary(const std::filesystem::path& path, const Grid& grid);
WaveField read_wave_binary(const std::filesystem::path& path, const Grid& grid);

/// CSV export, one row per grid point: "x,value" or "x,re,im". 17 significant
/// digits so values round-trip exactly.
void write_density_csv(const std::filesystem::path& path, const DensityField& field);
void write_wave_csv(const std::filesystem::path& path, const WaveField& field);

/// Reads an "x,value" CSV and reconstructs the uniform grid from the x column.
DensityField read_density_csv(const std::filesystem::path& path);

/// Reads a density from either format, keyed on the file extension
/// (".csv" vs anything else = binary). Binary files need the grid.
DensityField read_density_auto(const std::filesystem::path& path, const Grid* grid_hint);

std::string format_sci(double value);

}  // namespace jsnl
