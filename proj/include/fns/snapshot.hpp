#pragma once

#include <string>

#include "fns/field.hpp"

namespace fns {

// FNS1 spectral snapshot, little-endian:
//   bytes 0..3   magic "FNS1"
//   u32 dim, u32 n
//   f64 gamma (dissipation order the field was evolved under; 0 if n/a)
//   f64 time
//   u8  flags: bit0 mean_zero, bit1 div_free
// then dim * n^dim coefficients as (re, im) f64 pairs, components
// concatenated, modes in row-major FFT index order.
struct SnapshotMeta {
    double gamma = 0;
    double time = 0;
};

// Atomic write (temp file + rename). Round trips bit-exactly.
void write_snapshot(const std::string& path, const SpectralField& u,
                    double gamma, double time);

// Validates magic, header sanity, payload size, and that declared flags hold
// on the actual coefficients (mean_zero / div_free within 1e-9 relative).
SpectralField read_snapshot(const std::string& path, SnapshotMeta* meta = nullptr);

}  // namespace fns
