#include "fieldio.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace semlab {

static_assert(std::endian::native == std::endian::little,
              "field dumps are little-endian; big-endian hosts unsupported");

namespace {
constexpr char kMagic[4] = {'S', 'L', 'F', 'D'};

void write_raw(std::ofstream &out, const void *p, std::size_t bytes) {
  out.write(static_cast<const char *>(p), static_cast<std::streamsize>(bytes));
}

void read_raw(std::ifstream &in, void *p, std::size_t bytes, const std::string &path) {
  in.read(static_cast<char *>(p), static_cast<std::streamsize>(bytes));
  require(in.good(), ErrorCode::io, "truncated field dump: " + path);
}
}  // namespace

void save_field(const std::string &path, const Field2D &f, double h, double energy) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::io, "cannot write field dump: " + path);
  write_raw(out, kMagic, 4);
  const std::uint32_t n = static_cast<std::uint32_t>(f.dom.n);
  write_raw(out, &n, 4);
  write_raw(out, &f.dom.length, 8);
  write_raw(out, &h, 8);
  write_raw(out, &energy, 8);
  write_raw(out, f.v.data(), f.v.size() * 8);
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

FieldDump load_field(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::io, "cannot open field dump: " + path);
  char magic[4];
  read_raw(in, magic, 4, path);
  require(std::memcmp(magic, kMagic, 4) == 0, ErrorCode::parse,
          "bad magic in field dump: " + path);
  std::uint32_t n = 0;
  read_raw(in, &n, 4, path);
  FieldDump d;
  double L = 0.0;
  read_raw(in, &L, 8, path);
  read_raw(in, &d.h, 8, path);
  read_raw(in, &d.energy, 8, path);
  d.field = Field2D(TorusDomain(L, static_cast<int>(n)));
  read_raw(in, d.field.v.data(), d.field.v.size() * 8, path);
  return d;
}

void save_eigenpair(const std::string &path, const EigenPair &pair) {
  save_field(path, pair.phi, pair.h, pair.energy);
}

EigenPair load_eigenpair(const std::string &path) {
  FieldDump d = load_field(path);
  EigenPair p;
  p.h = d.h;
  p.energy = d.energy;
  p.phi = std::move(d.field);
  p.residual = 0.0;  // not stored in the dump
  return p;
}

}  // namespace semlab
