#pragma once

#include <complex>
#include <vector>

#include "fns/grid.hpp"

namespace fns {

using cplx = std::complex<double>;

// Fourier-side field: `comps` components, each n^d coefficients in FFT index
// order (see TorusGrid). Convention:
//   u_hat(k) = n^-d  sum_j u(x_j) exp(-i k.x_j),
//   u(x)    =        sum_k u_hat(k) exp(+i k.x).
// Velocity fields carry comps == grid.dim; scalars comps == 1.
struct SpectralField {
    TorusGrid grid;
    std::vector<std::vector<cplx>> c;  // [comp][mode]
    bool mean_zero = false;            // declared invariant: c(0) == 0
    bool div_free = false;             // declared invariant: k . c(k) == 0

    int comps() const { return static_cast<int>(c.size()); }
};

// Collocation values on the grid, same storage order as the modes.
struct PhysicalField {
    TorusGrid grid;
    std::vector<std::vector<double>> v;  // [comp][point]

    int comps() const { return static_cast<int>(v.size()); }
};

SpectralField make_spectral_field(const TorusGrid& g, int comps);
PhysicalField make_physical_field(const TorusGrid& g, int comps);

// Largest |coefficient| over all components (sup over modes).
double max_coeff(const SpectralField& u);

// max over modes of |k . u_hat(k)| -- spectral divergence residual.
double divergence_sup(const SpectralField& u);

}  // namespace fns
