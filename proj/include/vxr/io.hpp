#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vxr/grid.hpp"

namespace vxr::io {

// Container layout shared by both formats (all integers little-endian):
//   magic[4]  "VXG1" (occupancy) or "VXF1" (f64 field)
//   u32 d, u32 n_1..n_d, f64 h, f64 origin_1..origin_d
//   payload: VXG1 packs one bit per voxel, row-major with axis 1 fastest,
//   least significant bit first, zero-padded to a whole byte;
//   VXF1 stores one f64 per voxel in the same order.

std::vector<std::uint8_t> encode_grid(const VoxelSet& vs);
VoxelSet decode_grid(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_field(const GridSpec& grid, std::span<const double> values);
std::pair<GridSpec, std::vector<double>> decode_field(std::span<const std::uint8_t> bytes);

void save_grid(const VoxelSet& vs, const std::filesystem::path& path);
VoxelSet load_grid(const std::filesystem::path& path);
void save_field(const GridSpec& grid, std::span<const double> values,
                const std::filesystem::path& path);
std::pair<GridSpec, std::vector<double>> load_field(const std::filesystem::path& path);

/// True if the file starts with the "VXG1" magic.
bool is_grid_file(const std::filesystem::path& path);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace vxr::io
