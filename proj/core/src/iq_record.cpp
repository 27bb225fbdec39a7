#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "stmm/numeric.hpp"
#include "stmm/oracle.hpp"

namespace stmm {

namespace {

constexpr std::size_t header_size = 64;

void put_le(std::ofstream& os, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_le(const unsigned char* b) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_iq(const std::filesystem::path& path, const RxRecord& rec) {
  std::string h = "STMMIQ v1 fs=" + format_double(rec.sample_rate) + " n=" + std::to_string(rec.samples.size());
  if (h.size() > header_size - 1) throw std::invalid_argument("IQ header does not fit in 64 bytes");
  h.resize(header_size - 1, ' ');
  h.push_back('\n');
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os.write(h.data(), static_cast<std::streamsize>(h.size()));
  for (const auto& z : rec.samples) {
    put_le(os, z.real());
    put_le(os, z.imag());
  }
  if (!os) throw std::runtime_error("write failed on " + path.string());
}

RxRecord read_iq(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  char h[header_size];
  if (!is.read(h, header_size)) throw std::runtime_error("truncated IQ header");
  if (std::memcmp(h, "STMMIQ v1 ", 10) != 0 || h[header_size - 1] != '\n')
    throw std::runtime_error("not an STMMIQ v1 file");
  const std::string text(h, header_size - 1);
  const auto fpos = text.find("fs=");
  const auto npos = text.find(" n=");
  if (fpos == std::string::npos || npos == std::string::npos) throw std::runtime_error("malformed IQ header");
  RxRecord rec;
  std::size_t n = 0;
  const char* fb = text.data() + fpos + 3;
  const char* nb = text.data() + npos + 3;
  const char* end = text.data() + text.size();
  if (std::from_chars(fb, text.data() + npos, rec.sample_rate).ec != std::errc{} ||
      std::from_chars(nb, end, n).ec != std::errc{})
    throw std::runtime_error("malformed IQ header fields");
  rec.samples.resize(n);
  unsigned char b[16];
  for (auto& z : rec.samples) {
    if (!is.read(reinterpret_cast<char*>(b), 16)) throw std::runtime_error("truncated IQ payload");
    z = {get_le(b), get_le(b + 8)};
  }
  return rec;
}

}  // namespace stmm
