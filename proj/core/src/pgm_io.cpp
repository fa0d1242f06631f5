#include "accelflow/pgm_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace accelflow {

namespace {

// Next token, skipping whitespace and '#' comment lines.
bool next_token(std::istream& in, std::string& tok) {
  tok.clear();
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (!std::isspace(c)) break;
  }
  if (c == EOF) return false;
  do {
    tok.push_back(static_cast<char>(c));
  } while ((c = in.get()) != EOF && !std::isspace(c) && c != '#');
  if (c == '#') in.unget();
  return true;
}

int parse_int(const std::string& tok) {
  size_t pos = 0;
  int v = std::stoi(tok, &pos);
  if (pos != tok.size()) throw PgmError("pgm: malformed header (bad integer '" + tok + "')");
  return v;
}

}  // namespace

ScalarField load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PgmError("pgm: cannot open '" + path + "'");

  std::string magic, tok;
  if (!next_token(in, magic) || (magic != "P5" && magic != "P2"))
    throw PgmError("pgm: malformed header (expected P2 or P5 magic)");

  int w = 0, h = 0, maxval = 0;
  try {
    if (!next_token(in, tok)) throw PgmError("pgm: malformed header (missing width)");
    w = parse_int(tok);
    if (!next_token(in, tok)) throw PgmError("pgm: malformed header (missing height)");
    h = parse_int(tok);
    if (!next_token(in, tok)) throw PgmError("pgm: malformed header (missing maxval)");
    maxval = parse_int(tok);
  } catch (const std::invalid_argument&) {
    throw PgmError("pgm: malformed header (non-numeric field)");
  }
  if (w <= 0 || h <= 0) throw PgmError("pgm: malformed header (non-positive dimensions)");
  if (maxval <= 0 || maxval > 255)
    throw PgmError("pgm: unsupported maxval " + std::to_string(maxval));

  const GridSpec g(w, h);
  std::vector<double> data(static_cast<size_t>(w) * h);
  // single division per sample: k / maxval is the correctly rounded
  // double, so an 8-bit quantized raster round-trips bitwise
  const double maxv = static_cast<double>(maxval);

  if (magic == "P5") {
    std::vector<unsigned char> raw(data.size());
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<size_t>(in.gcount()) != raw.size())
      throw PgmError("pgm: truncated payload");
    for (size_t i = 0; i < raw.size(); ++i) data[i] = raw[i] / maxv;
  } else {
    for (size_t i = 0; i < data.size(); ++i) {
      if (!next_token(in, tok)) throw PgmError("pgm: truncated payload");
      int v;
      try {
        v = parse_int(tok);
      } catch (const std::invalid_argument&) {
        throw PgmError("pgm: truncated payload (non-numeric sample)");
      }
      if (v < 0 || v > maxval) throw PgmError("pgm: sample out of range");
      data[i] = v / maxv;
    }
  }
  return {g, std::move(data)};
}

void save_pgm(const ScalarField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PgmError("pgm: cannot write '" + path + "'");
  out << "P5\n" << field.grid().width << " " << field.grid().height << "\n255\n";
  std::vector<unsigned char> raw(field.size());
  for (int i = 0; i < field.size(); ++i) {
    double v = field[i];
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    raw[i] = static_cast<unsigned char>(std::lround(v * 255.0));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw PgmError("pgm: write failed for '" + path + "'");
}

}  // namespace accelflow
