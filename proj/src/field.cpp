#include "fns/field.hpp"

#include <cmath>
#include <stdexcept>

namespace fns {

SpectralField make_spectral_field(const TorusGrid& g, int comps) {
    if (comps < 1 || comps > 3)
        throw std::invalid_argument("make_spectral_field: comps must be in [1,3]");
    SpectralField u;
    u.grid = g;
    u.c.assign(comps, std::vector<cplx>(g.total_modes(), cplx{0.0, 0.0}));
    return u;
}

PhysicalField make_physical_field(const TorusGrid& g, int comps) {
    if (comps < 1 || comps > 3)
        throw std::invalid_argument("make_physical_field: comps must be in [1,3]");
    PhysicalField u;
    u.grid = g;
    u.v.assign(comps, std::vector<double>(g.total_modes(), 0.0));
    return u;
}

double max_coeff(const SpectralField& u) {
    double m = 0.0;
    for (const auto& comp : u.c)
        for (const cplx& z : comp) m = std::max(m, std::abs(z));
    return m;
}

double divergence_sup(const SpectralField& u) {
    if (u.comps() != u.grid.dim)
        throw std::invalid_argument("divergence_sup: needs a velocity field (comps == dim)");
    double m = 0.0;
    for_each_mode(u.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
        cplx dot{0.0, 0.0};
        for (int a = 0; a < u.grid.dim; ++a) dot += double(k[a]) * u.c[a][idx];
        m = std::max(m, std::abs(dot));
    });
    return m;
}

}  // namespace fns
