#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "tbsim/error.hpp"
#include "tbsim/propagator.hpp"

namespace tbsim {

namespace {

static_assert(std::endian::native == std::endian::little, "TBSM I/O assumes a little-endian host");

constexpr char kMagic[4] = {'T', 'B', 'S', 'M'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

void write_tbsm(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(kMagic, 4);
  put(out, kVersion);
  put(out, static_cast<std::uint32_t>(m.rows()));
  put(out, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      put(out, m(r, c).real());
      put(out, m(r, c).imag());
    }
  if (!out) throw IoError("write failed: " + path);
}

Matrix read_tbsm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw ConfigError(path, "not a TBSM file");
  const auto version = get<std::uint32_t>(in);
  if (version != kVersion) throw ConfigError(path, "unsupported TBSM version " + std::to_string(version));
  const auto rows = get<std::uint32_t>(in);
  const auto cols = get<std::uint32_t>(in);
  Matrix m(rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r)
    for (std::uint32_t c = 0; c < cols; ++c) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      m(r, c) = {re, im};
    }
  if (!in) throw ConfigError(path, "truncated TBSM file");
  return m;
}

}  // namespace tbsim
