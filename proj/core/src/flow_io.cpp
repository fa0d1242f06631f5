#include "accelflow/flow_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

namespace accelflow {

namespace {

constexpr char kMagic[4] = {'D', 'F', 'L', 'O'};

void put_u32le(std::vector<unsigned char>& buf, std::uint32_t v) {
  buf.push_back(static_cast<unsigned char>(v & 0xff));
  buf.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  buf.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  buf.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

void put_f32le(std::vector<unsigned char>& buf, float f) {
  put_u32le(buf, std::bit_cast<std::uint32_t>(f));
}

std::uint32_t get_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

float get_f32le(const unsigned char* p) { return std::bit_cast<float>(get_u32le(p)); }

}  // namespace

void save_flow(const MapField& m, const std::string& path) {
  std::vector<unsigned char> buf;
  buf.reserve(12 + static_cast<size_t>(m.size()) * 8);
  buf.insert(buf.end(), kMagic, kMagic + 4);
  put_u32le(buf, static_cast<std::uint32_t>(m.grid().width));
  put_u32le(buf, static_cast<std::uint32_t>(m.grid().height));
  for (int i = 0; i < m.size(); ++i) {
    put_f32le(buf, static_cast<float>(m.ux(i)));
    put_f32le(buf, static_cast<float>(m.uy(i)));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FlowError("flow: cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw FlowError("flow: write failed for '" + path + "'");
}

MapField load_flow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FlowError("flow: cannot open '" + path + "'");
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (buf.size() < 12 || std::memcmp(buf.data(), kMagic, 4) != 0)
    throw FlowError("flow: bad magic in '" + path + "'");
  const std::uint32_t w = get_u32le(buf.data() + 4);
  const std::uint32_t h = get_u32le(buf.data() + 8);
  const size_t expected = 12 + static_cast<size_t>(w) * h * 8;
  if (w < 4 || h < 4 || buf.size() != expected)
    throw FlowError("flow: size mismatch in '" + path + "'");
  GridSpec g(static_cast<int>(w), static_cast<int>(h));
  MapField m(g);
  const unsigned char* p = buf.data() + 12;
  for (int i = 0; i < m.size(); ++i, p += 8) {
    m.ux(i) = get_f32le(p);
    m.uy(i) = get_f32le(p + 4);
  }
  return m;
}

}  // namespace accelflow
