#include "pfc/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "pfc/errors.hpp"

namespace pfc {

namespace {

constexpr char kMagic[4] = {'P', 'F', 'C', '1'};
constexpr std::size_t kHeaderSize = 16;

void put_u32(std::vector<std::uint8_t> &out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b)
    out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void put_f64(std::vector<std::uint8_t> &out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b)
    out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
}

std::uint32_t get_u32(const std::uint8_t *p) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b)
    v |= static_cast<std::uint32_t>(p[b]) << (8 * b);
  return v;
}

double get_f64(const std::uint8_t *p) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b)
    v |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  return std::bit_cast<double>(v);
}

} // namespace

std::vector<std::uint8_t> encode_field(const PhaseField &u) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.reserve(kHeaderSize + 8 * u.data().size());
  put_u32(out, static_cast<std::uint32_t>(u.grid().nx));
  put_u32(out, static_cast<std::uint32_t>(u.grid().ny));
  put_u32(out, static_cast<std::uint32_t>(u.components()));
  for (double v : u.data())
    put_f64(out, v);
  return out;
}

PhaseField decode_field(const std::vector<std::uint8_t> &bytes, const GridSpec &grid) {
  if (bytes.size() < kHeaderSize)
    throw IoError("field file size mismatch: truncated header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw IoError("field file has bad magic (expected PFC1)");
  const std::uint64_t nx = get_u32(bytes.data() + 4);
  const std::uint64_t ny = get_u32(bytes.data() + 8);
  const std::uint64_t m = get_u32(bytes.data() + 12);
  const std::uint64_t expected = kHeaderSize + 8 * nx * ny * m;
  if (bytes.size() != expected)
    throw IoError("field file size mismatch: expected " + std::to_string(expected) +
                  " bytes, found " + std::to_string(bytes.size()));
  if (nx != static_cast<std::uint64_t>(grid.nx) || ny != static_cast<std::uint64_t>(grid.ny))
    throw IoError("field is " + std::to_string(nx) + "x" + std::to_string(ny) +
                  " but the grid is " + std::to_string(grid.nx) + "x" + std::to_string(grid.ny));
  if (m < 1 || m > 2)
    throw IoError("field has unsupported component count " + std::to_string(m));

  PhaseField u(grid, static_cast<int>(m));
  auto data = u.data();
  for (std::size_t k = 0; k < data.size(); ++k)
    data[k] = get_f64(bytes.data() + kHeaderSize + 8 * k);
  return u;
}

void write_bytes(const std::filesystem::path &path, const std::vector<std::uint8_t> &bytes) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file)
    throw IoError("cannot open '" + path.string() + "' for writing");
  file.write(reinterpret_cast<const char *>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  if (!file)
    throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path &path) {
  std::ifstream file(path, std::ios::binary);
  if (!file)
    throw IoError("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(file)),
                                  std::istreambuf_iterator<char>());
  if (file.bad())
    throw IoError("failed reading '" + path.string() + "'");
  return bytes;
}

void write_field(const std::filesystem::path &path, const PhaseField &u) {
  write_bytes(path, encode_field(u));
}

PhaseField read_field(const std::filesystem::path &path, const GridSpec &grid) {
  return decode_field(read_bytes(path), grid);
}

} // namespace pfc
