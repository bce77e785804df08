#include "fns/operators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fns/fft.hpp"

namespace fns {

namespace {

double mode_abs(const std::array<int, 3>& k, int dim) {
    double s = 0.0;
    for (int a = 0; a < dim; ++a) s += double(k[a]) * double(k[a]);
    return std::sqrt(s);
}

// i^m for integer m >= 0.
cplx i_pow(int m) {
    switch (m & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

void apply_semigroup(SpectralField& u, double gamma, double t) {
    if (gamma <= 0.0 || gamma > 2.0)
        throw std::invalid_argument("apply_semigroup: gamma must be in (0,2]");
    if (t < 0.0) throw std::invalid_argument("apply_semigroup: t must be >= 0");
    if (t == 0.0) return;
    for_each_mode(u.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
        const double r = mode_abs(k, u.grid.dim);
        const double f = std::exp(-t * std::pow(r, gamma));
        for (auto& comp : u.c) comp[idx] *= f;
    });
}

void fractional_derivative(SpectralField& u, double alpha) {
    if (alpha == 0.0) return;
    if (alpha <= -u.grid.dim)
        throw std::invalid_argument("fractional_derivative: alpha must exceed -d");
    for_each_mode(u.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
        const double r = mode_abs(k, u.grid.dim);
        const double f = (r == 0.0) ? 0.0 : std::pow(r, alpha);
        for (auto& comp : u.c) comp[idx] *= f;
    });
    u.mean_zero = true;
}

void partial_derivative(SpectralField& u, int axis, int k) {
    if (axis < 0 || axis >= u.grid.dim)
        throw std::invalid_argument("partial_derivative: axis out of range");
    if (k < 1) throw std::invalid_argument("partial_derivative: order must be >= 1");
    const cplx rot = i_pow(k);
    for_each_mode(u.grid, [&](std::int64_t idx, const std::array<int, 3>& kv) {
        const int ka = kv[axis];
        cplx f;
        if (u.grid.is_nyquist(ka)) {
            f = {0.0, 0.0};
        } else {
            f = rot * std::pow(double(ka), double(k));
        }
        for (auto& comp : u.c) comp[idx] *= f;
    });
    u.mean_zero = true;
}

void leray_project(SpectralField& u) {
    const int d = u.grid.dim;
    if (u.comps() != d)
        throw std::invalid_argument("leray_project: needs comps == dim");
    if (d == 1) {
        // P annihilates everything but the mean in 1d.
        for_each_mode(u.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
            if (k[0] != 0) u.c[0][idx] = {0.0, 0.0};
        });
        u.div_free = true;
        return;
    }
    for_each_mode(u.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) k2 += double(k[a]) * double(k[a]);
        if (k2 == 0.0) return;
        cplx dot{0.0, 0.0};
        for (int a = 0; a < d; ++a) dot += double(k[a]) * u.c[a][idx];
        dot /= k2;
        for (int a = 0; a < d; ++a) u.c[a][idx] -= double(k[a]) * dot;
    });
    u.div_free = true;
}

void dealias_truncate(SpectralField& u) {
    const int cut = u.grid.dealias_cutoff();
    for_each_mode(u.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
        for (int a = 0; a < u.grid.dim; ++a) {
            if (std::abs(k[a]) >= cut || u.grid.is_nyquist(k[a])) {
                for (auto& comp : u.c) comp[idx] = {0.0, 0.0};
                return;
            }
        }
    });
}

SpectralField nonlinear_term(const SpectralField& u) {
    const TorusGrid& g = u.grid;
    const int d = g.dim;
    if (u.comps() != d)
        throw std::invalid_argument("nonlinear_term: needs a velocity field (comps == dim)");
    const double scale = max_coeff(u);
    if (scale > 0.0 && divergence_sup(u) > 1e-9 * scale)
        throw std::invalid_argument("nonlinear_term: input is not divergence-free");
    if (scale > 0.0 && std::abs(u.c[0][0]) + (d > 1 ? std::abs(u.c[1][0]) : 0.0) +
                               (d > 2 ? std::abs(u.c[2][0]) : 0.0) >
                           1e-12 * scale)
        throw std::invalid_argument("nonlinear_term: input has nonzero mean");

    SpectralField ut = u;
    dealias_truncate(ut);
    PhysicalField up = to_physical(ut);

    // Symmetric products w_ab = u_a u_b, a <= b.
    const std::int64_t m = g.total_modes();
    PhysicalField prod = make_physical_field(g, 1);
    SpectralField what[3][3];
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
            for (std::int64_t i = 0; i < m; ++i)
                prod.v[0][i] = up.v[a][i] * up.v[b][i];
            what[a][b] = to_spectral(prod);
        }

    SpectralField out = make_spectral_field(g, d);
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
        for (int a = 0; a < d; ++a) {
            cplx s{0.0, 0.0};
            for (int b = 0; b < d; ++b) {
                const auto& w = (a <= b) ? what[a][b] : what[b][a];
                s += double(k[b]) * w.c[0][idx];
            }
            out.c[a][idx] = cplx{0.0, 1.0} * s;
        }
    });
    dealias_truncate(out);
    for (int a = 0; a < d; ++a) out.c[a][0] = {0.0, 0.0};
    leray_project(out);
    out.mean_zero = true;
    return out;
}

namespace {

double lp_from_magnitude(const std::vector<double>& mag, double p, double cell) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : mag) m = std::max(m, v);
        return m;
    }
    double s = 0.0;
    if (p == 1.0) {
        for (double v : mag) s += v;
    } else if (p == 2.0) {
        for (double v : mag) s += v * v;
    } else {
        for (double v : mag) s += std::pow(v, p);
    }
    return std::pow(s * cell, 1.0 / p);
}

}  // namespace

double lp_norm(const PhysicalField& u, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm: p must be >= 1 (or infinity)");
    const std::int64_t m = u.grid.total_modes();
    std::vector<double> mag(m, 0.0);
    if (u.comps() == 1) {
        for (std::int64_t i = 0; i < m; ++i) mag[i] = std::abs(u.v[0][i]);
    } else {
        for (int a = 0; a < u.comps(); ++a)
            for (std::int64_t i = 0; i < m; ++i) mag[i] += u.v[a][i] * u.v[a][i];
        for (std::int64_t i = 0; i < m; ++i) mag[i] = std::sqrt(mag[i]);
    }
    const double h = u.grid.spacing();
    double cell = 1.0;
    for (int a = 0; a < u.grid.dim; ++a) cell *= h;
    return lp_from_magnitude(mag, p, cell);
}

double lp_norm(const SpectralField& u, double p) { return lp_norm(to_physical(u), p); }

double energy(const SpectralField& u) {
    double s = 0.0;
    for (const auto& comp : u.c)
        for (const cplx& z : comp) s += std::norm(z);
    double vol = 1.0;
    for (int a = 0; a < u.grid.dim; ++a) vol *= kTwoPi;
    return vol * s;
}

double dissipation(const SpectralField& u, double gamma) {
    double s = 0.0;
    for_each_mode(u.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
        const double r = mode_abs(k, u.grid.dim);
        const double f = std::pow(r, gamma);  // |k|^{2 * gamma/2}
        for (const auto& comp : u.c) s += f * std::norm(comp[idx]);
    });
    double vol = 1.0;
    for (int a = 0; a < u.grid.dim; ++a) vol *= kTwoPi;
    return vol * s;
}

double sobolev_norm(const SpectralField& u, double s) {
    double acc = 0.0;
    for_each_mode(u.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
        double k2 = 0.0;
        for (int a = 0; a < u.grid.dim; ++a) k2 += double(k[a]) * double(k[a]);
        const double f = std::pow(1.0 + k2, s);
        for (const auto& comp : u.c) acc += f * std::norm(comp[idx]);
    });
    double vol = 1.0;
    for (int a = 0; a < u.grid.dim; ++a) vol *= kTwoPi;
    return std::sqrt(vol * acc);
}

}  // namespace fns
