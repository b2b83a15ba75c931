#pragma once

#include <string>

#include "xgev/grid.hpp"

namespace xgev {

// Binary field container: magic "XGEV1", a version byte, dim, per-axis sample
// counts, box bounds as binary64, then interleaved little-endian complex
// binary64 payload in row-major order. A two-column (re, im) CSV alternative
// is provided for 1-D fields.

void save_field(const SampledField& field, const std::string& path);
SampledField load_field(const std::string& path);

void save_field_csv(const SampledField& field, const std::string& path);
SampledField load_field_csv(const std::string& path, const GridSpec& grid);

}  // namespace xgev
