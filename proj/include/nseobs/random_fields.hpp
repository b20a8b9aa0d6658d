#pragma once

#include <cstdint>
#include <vector>

#include "nseobs/field.hpp"

namespace nseobs {

/// Generator settings for random zero-mean Hermitian-symmetric test fields.
struct RandomFieldSpec {
  std::uint64_t seed = 1;
  int band = 8;                  ///< max |k1|,|k2| populated
  double spectrum_decay = 1.5;   ///< coefficient magnitude ~ |k|^-decay
  int count = 100;
  bool divergence_free = true;
};

/// Deterministic for a given spec (identical across platforms).
std::vector<VelocityField> make_random_fields(const GridSpec& grid, const RandomFieldSpec& spec);

VelocityField make_random_field(const GridSpec& grid, const RandomFieldSpec& spec,
                                std::uint64_t field_index);

/// Random real field with |samples| bounded by sup_bound (strictly below it),
/// spectrally band-limited to the grid's dealias band.
VelocityField make_bounded_noise(const GridSpec& grid, std::uint64_t seed, double sup_bound,
                                 bool divergence_free = true);

}  // namespace nseobs
