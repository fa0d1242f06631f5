#pragma once

#include <stdexcept>
#include <string>

#include "accelflow/fields.hpp"

namespace accelflow {

struct PgmError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads a P5 (binary) or P2 (ASCII) PGM with maxval <= 255; intensities
/// are divided by maxval into [0, 1]. Throws PgmError with a distinct
/// message for a malformed header, truncated payload, or unsupported
/// maxval.
ScalarField load_pgm(const std::string& path);

/// Writes binary P5, clamping to [0, 1] and scaling to 255.
void save_pgm(const ScalarField& field, const std::string& path);

}  // namespace accelflow
