#pragma once

#include <cstdint>
#include <random>

#include "accelflow/fields.hpp"

namespace accelflow {

/// Deterministic RNG wrapper: mt19937_64 with explicit bit-to-double
/// mapping, so identical seeds give bitwise-identical streams everywhere.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * u01(); }
  std::uint64_t next_seed() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

struct SquarePair {
  ScalarField i0;
  ScalarField i1;
  MapField gt_flow;  // constant field; satisfies warp(i1, gt) == i0
};

/// White square (intensity 1) centered on black background; i1 is the
/// square translated by (shift_x, shift_y). Integer shift; both squares
/// must fit without wrapping.
SquarePair gen_square_pair(const GridSpec& g, int square_size, int shift_x, int shift_y);

struct RectPair {
  ScalarField i0;
  ScalarField i1;
};

/// i0 holds a centered square (square_size), i1 a rectangle (rect_w x
/// rect_h) translated by shift_x pixels. No ground-truth flow exists.
RectPair gen_rect_pair(const GridSpec& g, int square_size, int rect_w, int rect_h, int shift_x);

/// Each pixel is independently replaced by 0 or 1 (equal probability)
/// with probability `level`.
ScalarField add_salt_pepper(const ScalarField& image, double level, std::uint64_t seed);

/// Band-limited random field: sum of cosines with wavenumbers up to kmax
/// per axis, scaled to peak amplitude ~`amplitude`.
ScalarField random_smooth_field(const GridSpec& g, int kmax, double amplitude,
                                std::uint64_t seed);

/// Smooth random image with values in [0, 1].
ScalarField random_smooth_image(const GridSpec& g, int kmax, std::uint64_t seed);

VectorField random_smooth_vector(const GridSpec& g, int kmax, double amplitude,
                                 std::uint64_t seed);

/// Smooth random displacement rounded to whole pixels.
MapField random_integer_map(const GridSpec& g, int kmax, double amplitude, std::uint64_t seed);

}  // namespace accelflow
