#pragma once

#include <complex>
#include <vector>

#include "fns/field.hpp"

namespace fns {

// Unnormalized c2c DFT over a row-major array of the given shape.
// sign = -1: forward (exp(-i k.x) weights); sign = +1: backward.
// in/out may alias. Plans are cached per (shape, sign) and created with
// FFTW_ESTIMATE | FFTW_UNALIGNED so plan selection never depends on timing
// or buffer addresses; reruns of the same binary are bit-reproducible.
void dft(const std::vector<int>& shape, cplx* in, cplx* out, int sign);

// Collocation values from modes (backward transform, real part).
PhysicalField to_physical(const SpectralField& u);

// Modes from collocation values (forward transform, scaled by n^-d).
SpectralField to_spectral(const PhysicalField& u);

}  // namespace fns
