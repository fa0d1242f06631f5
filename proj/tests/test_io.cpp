#include <doctest.h>

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <string>

#include "accelflow/flow_io.hpp"
#include "accelflow/pgm_io.hpp"
#include "accelflow/synthetic.hpp"

using namespace accelflow;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("accelflow_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("pgm round trip is exact for 8-bit quantized intensities") {
  TempDir tmp;
  GridSpec g(9, 7);
  ScalarField f(g);
  SeededRng rng(2);
  for (int i = 0; i < f.size(); ++i)
    f[i] = static_cast<double>(rng.next_seed() % 256) / 255.0;
  save_pgm(f, tmp.file("a.pgm"));
  ScalarField back = load_pgm(tmp.file("a.pgm"));
  REQUIRE(back.grid() == g);
  for (int i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
}

TEST_CASE("P2 and P5 encodings of one raster load identically") {
  TempDir tmp;
  const int w = 5, h = 4;
  int vals[20];
  SeededRng rng(9);
  for (int i = 0; i < 20; ++i) vals[i] = static_cast<int>(rng.next_seed() % 256);

  {
    std::ofstream p2(tmp.file("img.p2"));
    p2 << "P2\n# a comment line\n" << w << " " << h << "\n255\n";
    for (int i = 0; i < 20; ++i) p2 << vals[i] << "\n";
  }
  {
    std::ofstream p5(tmp.file("img.p5"), std::ios::binary);
    p5 << "P5\n" << w << " " << h << "\n255\n";
    for (int i = 0; i < 20; ++i) p5.put(static_cast<char>(vals[i]));
  }
  ScalarField a = load_pgm(tmp.file("img.p2"));
  ScalarField b = load_pgm(tmp.file("img.p5"));
  for (int i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("pgm loader reports distinct failures") {
  TempDir tmp;
  {
    std::ofstream out(tmp.file("bad_magic.pgm"));
    out << "P6\n4 4\n255\n";
  }
  CHECK_THROWS_WITH_AS(load_pgm(tmp.file("bad_magic.pgm")),
                       doctest::Contains("malformed header"), PgmError);

  {
    std::ofstream out(tmp.file("trunc.pgm"), std::ios::binary);
    out << "P5\n8 8\n255\n";
    out.put('\x10');  // 1 of 64 payload bytes
  }
  CHECK_THROWS_WITH_AS(load_pgm(tmp.file("trunc.pgm")), doctest::Contains("truncated"),
                       PgmError);

  {
    std::ofstream out(tmp.file("deep.pgm"), std::ios::binary);
    out << "P5\n4 4\n65535\n";
  }
  CHECK_THROWS_WITH_AS(load_pgm(tmp.file("deep.pgm")), doctest::Contains("unsupported maxval"),
                       PgmError);

  CHECK_THROWS_AS(load_pgm(tmp.file("missing.pgm")), PgmError);
}

TEST_CASE("dflo layout: identity, exact size, float32 round trip") {
  TempDir tmp;
  GridSpec g(50, 50);

  save_flow(MapField::identity(g), tmp.file("id.dflo"));
  MapField id = load_flow(tmp.file("id.dflo"));
  for (int i = 0; i < id.size(); ++i) {
    CHECK(id.ux(i) == 0.0);
    CHECK(id.uy(i) == 0.0);
  }

  save_flow(MapField::translation(g, 10, 0), tmp.file("t.dflo"));
  CHECK(fs::file_size(tmp.file("t.dflo")) == 4u + 8u + 50u * 50u * 8u);

  MapField m(g);
  SeededRng rng(31);
  for (int i = 0; i < m.size(); ++i) {
    m.ux(i) = rng.uniform(-20.0, 20.0);
    m.uy(i) = rng.uniform(-20.0, 20.0);
  }
  save_flow(m, tmp.file("r.dflo"));
  MapField back = load_flow(tmp.file("r.dflo"));
  for (int i = 0; i < m.size(); ++i) {
    CHECK(back.ux(i) == static_cast<double>(static_cast<float>(m.ux(i))));
    CHECK(back.uy(i) == static_cast<double>(static_cast<float>(m.uy(i))));
  }
}

TEST_CASE("dflo loader rejects bad magic and truncated files") {
  TempDir tmp;
  {
    std::ofstream out(tmp.file("bad.dflo"), std::ios::binary);
    out << "FLOW" << std::string(20, '\0');
  }
  CHECK_THROWS_WITH_AS(load_flow(tmp.file("bad.dflo")), doctest::Contains("bad magic"),
                       FlowError);
  {
    std::ofstream out(tmp.file("short.dflo"), std::ios::binary);
    out << "DFLO";
    const unsigned char dims[8] = {8, 0, 0, 0, 8, 0, 0, 0};
    out.write(reinterpret_cast<const char*>(dims), 8);
    out << std::string(16, '\0');  // far less than 8*8*8 payload bytes
  }
  CHECK_THROWS_WITH_AS(load_flow(tmp.file("short.dflo")), doctest::Contains("size mismatch"),
                       FlowError);
}
