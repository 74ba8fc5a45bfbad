#include "vxr/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "vxr/error.hpp"

namespace vxr::io {
namespace {

constexpr char kGridMagic[4] = {'V', 'X', 'G', '1'};
constexpr char kFieldMagic[4] = {'V', 'X', 'F', '1'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<std::uint8_t>(bits >> (8 * k)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : bytes_(b) {}

  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size())
      throw InputError("grid container truncated at byte " + std::to_string(bytes_.size()),
                       bytes_.size());
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(bytes_[pos_ + k]) << (8 * k);
    pos_ += 4;
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(bytes_[pos_ + k]) << (8 * k);
    pos_ += 8;
    return std::bit_cast<double>(v);
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t pos() const { return pos_; }
  std::size_t size() const { return bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void put_header(std::vector<std::uint8_t>& out, const char (&magic)[4], const GridSpec& g) {
  out.insert(out.end(), magic, magic + 4);
  put_u32(out, static_cast<std::uint32_t>(g.dim));
  for (int a = 0; a < g.dim; ++a) put_u32(out, static_cast<std::uint32_t>(g.extent[a]));
  put_f64(out, g.spacing);
  for (int a = 0; a < g.dim; ++a) put_f64(out, g.origin[a]);
}

GridSpec get_header(Reader& r, const char (&magic)[4]) {
  const auto m = r.take(4);
  if (std::memcmp(m.data(), magic, 4) != 0)
    throw InputError(std::string("bad magic: expected \"") + std::string(magic, 4) + "\"", 0);
  GridSpec g;
  const std::uint32_t d = r.u32();
  if (d != 2 && d != 3) throw InputError("grid container: dimension must be 2 or 3", 4);
  g.dim = static_cast<int>(d);
  for (int a = 0; a < g.dim; ++a) {
    const std::uint32_t n = r.u32();
    if (n == 0 || n > (1u << 20)) throw InputError("grid container: bad extent", r.pos() - 4);
    g.extent[a] = static_cast<int>(n);
  }
  g.spacing = r.f64();
  for (int a = 0; a < g.dim; ++a) g.origin[a] = r.f64();
  try {
    g.validate();
  } catch (const ParameterError& e) {
    throw InputError(std::string("grid container: ") + e.what(), r.pos());
  }
  return g;
}

}  // namespace

std::vector<std::uint8_t> encode_grid(const VoxelSet& vs) {
  std::vector<std::uint8_t> out;
  put_header(out, kGridMagic, vs.grid());
  const std::size_t n = vs.size();
  std::vector<std::uint8_t> packed((n + 7) / 8, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (vs[i]) packed[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7));
  out.insert(out.end(), packed.begin(), packed.end());
  return out;
}

VoxelSet decode_grid(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const GridSpec g = get_header(r, kGridMagic);
  const std::size_t n = g.size();
  const auto packed = r.take((n + 7) / 8);
  if (r.pos() != r.size()) throw InputError("grid container: trailing bytes", r.pos());
  std::vector<std::uint8_t> occ(n, 0);
  for (std::size_t i = 0; i < n; ++i) occ[i] = (packed[i >> 3] >> (i & 7)) & 1u;
  return VoxelSet(g, std::move(occ));
}

std::vector<std::uint8_t> encode_field(const GridSpec& grid, std::span<const double> values) {
  if (values.size() != grid.size())
    throw ParameterError("field: value count does not match grid");
  std::vector<std::uint8_t> out;
  put_header(out, kFieldMagic, grid);
  out.reserve(out.size() + 8 * values.size());
  for (double v : values) put_f64(out, v);
  return out;
}

std::pair<GridSpec, std::vector<double>> decode_field(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const GridSpec g = get_header(r, kFieldMagic);
  std::vector<double> values(g.size());
  for (double& v : values) v = r.f64();
  if (r.pos() != r.size()) throw InputError("field container: trailing bytes", r.pos());
  return {g, std::move(values)};
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  write_bytes(path, std::span<const std::uint8_t>(
                        reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string read_text(const std::filesystem::path& path) {
  const auto b = read_bytes(path);
  return std::string(b.begin(), b.end());
}

void save_grid(const VoxelSet& vs, const std::filesystem::path& path) {
  write_bytes(path, encode_grid(vs));
}

VoxelSet load_grid(const std::filesystem::path& path) { return decode_grid(read_bytes(path)); }

void save_field(const GridSpec& grid, std::span<const double> values,
                const std::filesystem::path& path) {
  write_bytes(path, encode_field(grid, values));
}

std::pair<GridSpec, std::vector<double>> load_field(const std::filesystem::path& path) {
  return decode_field(read_bytes(path));
}

bool is_grid_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char m[4] = {};
  in.read(m, 4);
  return in.gcount() == 4 && std::memcmp(m, kGridMagic, 4) == 0;
}

}  // namespace vxr::io
