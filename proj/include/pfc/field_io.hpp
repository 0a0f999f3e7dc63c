#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pfc/grid.hpp"

namespace pfc {

/// PFC1 binary field files:
///   "PFC1" | nx u32 | ny u32 | m u32 | m planes of nx*ny f64
/// All integers and floats little-endian; planes row-major, x fastest.
std::vector<std::uint8_t> encode_field(const PhaseField &u);

/// Throws IoError on a bad magic, a payload of the wrong length or a shape
/// that does not match `grid`.
PhaseField decode_field(const std::vector<std::uint8_t> &bytes, const GridSpec &grid);

void write_field(const std::filesystem::path &path, const PhaseField &u);
PhaseField read_field(const std::filesystem::path &path, const GridSpec &grid);

/// Whole-file helpers shared by the writers; failures raise IoError.
void write_bytes(const std::filesystem::path &path, const std::vector<std::uint8_t> &bytes);
std::vector<std::uint8_t> read_bytes(const std::filesystem::path &path);

} // namespace pfc
