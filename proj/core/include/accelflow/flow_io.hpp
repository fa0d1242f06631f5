#pragma once

#include <stdexcept>
#include <string>

#include "accelflow/fields.hpp"

namespace accelflow {

struct FlowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// DFLO displacement-flow file, bit-exact layout:
//   bytes 0..3   magic "DFLO"
//   bytes 4..7   width,  u32 little-endian
//   bytes 8..11  height, u32 little-endian
//   then row-major interleaved (ux, uy) pairs as f32 little-endian.
// Displacements use the backward-warp convention I1(x + u(x)) ~ I0(x).

void save_flow(const MapField& m, const std::string& path);
MapField load_flow(const std::string& path);

}  // namespace accelflow
