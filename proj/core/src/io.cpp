#include "jsnl/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace jsnl {
namespace {

constexpr char kMagic[4] = {'J', 'S', 'N', 'L'};

struct Header {
  char magic[4];
  std::uint32_t version;
  std::uint32_t n;
  std::uint32_t reserved;
};
static_assert(sizeof(Header) == 16);

void write_payload(const std::filesystem::path& path, std::uint32_t n,
                   const double* data, size_t count) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::io_error, "cannot open " + path.string() + " for writing");
  Header h{};
  std::memcpy(h.magic, kMagic, 4);
  h.version = kSnapshotVersion;
  h.n = n;
  h.reserved = 0;
  out.write(reinterpret_cast<const char*>(&h), sizeof(h));
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
  if (!out) raise(Errc::io_error, "short write to " + path.string());
}

std::vector<double> read_payload(const std::filesystem::path& path, std::uint32_t* n_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::io_error, "cannot open " + path.string());
  Header h{};
  in.read(reinterpret_cast<char*>(&h), sizeof(h));
  if (!in || std::memcmp(h.magic, kMagic, 4) != 0)
    raise(Errc::io_error, path.string() + " is not a JSNL snapshot");
  if (h.version != kSnapshotVersion)
    raise(Errc::io_error, path.string() + ": unsupported snapshot version");
  std::vector<double> data;
  double v;
  while (in.read(reinterpret_cast<char*>(&v), sizeof(v))) data.push_back(v);
  *n_out = h.n;
  return data;
}

}  // namespace

void write_density_binary(const std::filesystem::path& path, const DensityField& field) {
  write_payload(path, static_cast<std::uint32_t>(field.grid.n), field.values.data(),
                field.values.size());
}

void write_wave_binary(const std::filesystem::path& path, const WaveField& field) {
  std::vector<double> interleaved(2 * field.values.size());
  for (size_t j = 0; j < field.values.size(); ++j) {
    interleaved[2 * j] = field.values[j].real();
    interleaved[2 * j + 1] = field.values[j].imag();
  }
  write_payload(path, static_cast<std::uint32_t>(field.grid.n), interleaved.data(),
                interleaved.size());
}

DensityField read_density_binary(const std::filesystem::path& path, const Grid& grid) {
  std::uint32_t n = 0;
  std::vector<double> data = read_payload(path, &n);
  if (static_cast<int>(n) != grid.n || data.size() != static_cast<size_t>(n))
    raise(Errc::io_error, path.string() + ": density payload does not match grid");
  return DensityField{grid, std::move(data)};
}

WaveField read_wave_binary(const std::filesystem::path& path, const Grid& grid) {
  std::uint32_t n = 0;
  std::vector<double> data = read_payload(path, &n);
  if (static_cast<int>(n) != grid.n || data.size() != 2 * static_cast<size_t>(n))
    raise(Errc::io_error, path.string() + ": wave payload does not match grid");
  WaveField psi{grid, std::vector<cplx>(static_cast<size_t>(n))};
  for (size_t j = 0; j < psi.values.size(); ++j)
    psi.values[j] = cplx(data[2 * j], data[2 * j + 1]);
  return psi;
}

std::string format_sci(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", value);
  return buf;
}

void write_density_csv(const std::filesystem::path& path, const DensityField& field) {
  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot open " + path.string() + " for writing");
  out << "x,value\n";
  for (int j = 0; j < field.grid.n; ++j)
    out << format_sci(field.grid.x(j)) << ',' << format_sci(field.values[static_cast<size_t>(j)])
        << '\n';
}

void write_wave_csv(const std::filesystem::path& path, const WaveField& field) {
  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot open " + path.string() + " for writing");
  out << "x,re,im\n";
  for (int j = 0; j < field.grid.n; ++j) {
    const cplx v = field.values[static_cast<size_t>(j)];
    out << format_sci(field.grid.x(j)) << ',' << format_sci(v.real()) << ','
        << format_sci(v.imag()) << '\n';
  }
}

DensityField read_density_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open " + path.string());
  std::string line;
  std::vector<double> xs, vals;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {  // header
      first = false;
      continue;
    }
    double x, v;
    if (std::sscanf(line.c_str(), "%lf,%lf", &x, &v) != 2)
      raise(Errc::io_error, path.string() + ": malformed CSV row '" + line + "'");
    xs.push_back(x);
    vals.push_back(v);
  }
  if (xs.size() < 8) raise(Errc::io_error, path.string() + ": too few rows for a grid");
  const double dx = xs[1] - xs[0];
  for (size_t j = 1; j + 1 < xs.size(); ++j) {
    if (std::abs((xs[j + 1] - xs[j]) - dx) > 1e-9 * std::abs(dx))
      raise(Errc::io_error, path.string() + ": x column is not uniformly spaced");
  }
  const int n = static_cast<int>(xs.size());
  Grid grid = make_grid(dx * n, n, xs[0]);
  return DensityField{grid, std::move(vals)};
}

DensityField read_density_auto(const std::filesystem::path& path, const Grid* grid_hint) {
  if (path.extension() == ".csv") return read_density_csv(path);
  if (grid_hint == nullptr)
    raise(Errc::missing_key, "binary density input needs grid.n and grid.length");
  return read_density_binary(path, *grid_hint);
}

}  // namespace jsnl
