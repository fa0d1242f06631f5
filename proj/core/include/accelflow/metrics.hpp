#pragma once

#include <cstdint>
#include <vector>

#include "accelflow/fields.hpp"

namespace accelflow {

/// Mean over pixels of |u(x) - u_gt(x)|_2.
double endpoint_error(const MapField& m, const MapField& gt);

/// Same, restricted to pixels where mask != 0. Throws on an empty mask.
double endpoint_error(const MapField& m, const MapField& gt, const std::vector<std::uint8_t>& mask);

struct ReconError {
  double data_term = 0.0;  // 1/2 sum (I1 o phi - I0)^2 dx^2
  double l2_norm = 0.0;    // sqrt(2 * data_term) = ||I1 o phi - I0||_2 dx
};

ReconError recon_error(const ScalarField& i0, const ScalarField& i1, const MapField& m);

}  // namespace accelflow
