#include "fns/kernel_tables.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "fns/fft.hpp"
#include "fns/grid.hpp"

namespace fns {

namespace {

// Shared symbol-to-table pipeline. symbol(xi) is sampled on the padded
// frequency grid (Nyquist planes zeroed), transformed, and the central
// window extracted.
KernelTable build_from_symbol(
    double gamma, double t, int dim, double extent, int samples,
    const KernelBuildOptions& opt,
    const std::function<cplx(const std::array<double, 3>&)>& symbol) {
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("kernel table: dim must be in {1,2,3}");
    if (!(t > 0)) throw std::invalid_argument("kernel table: t must be > 0");
    if (!(gamma >= 1.0 && gamma <= 2.0))
        throw std::invalid_argument("kernel table: gamma must be in [1,2]");
    if (!(extent > 0)) throw std::invalid_argument("kernel table: extent must be > 0");
    if (samples < 8 || samples % 2 != 0)
        throw std::invalid_argument("kernel table: samples must be even and >= 8");
    if (opt.padding < 2)
        throw std::invalid_argument(
            "kernel table: padding must be >= 2 (padding 1 folds the first "
            "periodic image onto the window)");

    const int N = opt.padding * samples;  // padded grid per axis
    const double dx = 2.0 * extent / samples;
    const double P = N * dx;          // alias period
    const double dxi = kTwoPi / P;
    const double xi_max = kTwoPi / (2.0 * dx);  // pi / dx

    // Spectral truncation must be negligible: exp(-t xi_max^gamma) < 1e-16.
    if (!(t * std::pow(xi_max, gamma) > 36.8)) {
        const double need = std::pow(36.8 / t, 1.0 / gamma);
        std::ostringstream msg;
        msg << "kernel table: frequency window xi_max = " << xi_max
            << " too small for t = " << t << ", gamma = " << gamma
            << " (need xi_max >= " << need
            << "); increase samples or decrease extent";
        throw std::invalid_argument(msg.str());
    }

    std::int64_t total = 1;
    for (int a = 0; a < dim; ++a) total *= N;
    std::vector<cplx> buf(total);

    const std::vector<int> shape(static_cast<std::size_t>(dim), N);
    std::array<int, 3> iv{0, 0, 0};
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    for (std::int64_t flat = 0; flat < total; ++flat) {
        std::int64_t rem = flat;
        for (int a = dim - 1; a >= 0; --a) {
            iv[a] = static_cast<int>(rem % N);
            rem /= N;
        }
        bool nyquist = false;
        for (int a = 0; a < dim; ++a) {
            const int k = iv[a] < N / 2 ? iv[a] : iv[a] - N;
            nyquist = nyquist || (k == -N / 2);
            xi[a] = k * dxi;
        }
        buf[flat] = nyquist ? cplx{0.0, 0.0} : symbol(xi);
    }

    dft(shape, buf.data(), buf.data(), +1);

    KernelTable tab;
    tab.gamma = gamma;
    tab.t = t;
    tab.dim = dim;
    tab.extent = extent;
    tab.samples = samples;
    tab.values.resize(tab.size());
    const double scale = 1.0 / std::pow(P, dim);

    double max_im = 0.0, max_re = 0.0;
    std::array<int, 3> jv{0, 0, 0};
    for (std::int64_t out = 0; out < tab.size(); ++out) {
        std::int64_t rem = out;
        for (int a = dim - 1; a >= 0; --a) {
            jv[a] = static_cast<int>(rem % samples);
            rem /= samples;
        }
        std::int64_t src = 0;
        for (int a = 0; a < dim; ++a) {
            const int mshift = (jv[a] - samples / 2 + N) % N;  // x = -extent + j dx
            src = src * N + mshift;
        }
        const cplx v = buf[src] * scale;
        tab.values[out] = v.real();
        max_im = std::max(max_im, std::abs(v.imag()));
        max_re = std::max(max_re, std::abs(v.real()));
    }
    if (max_im > 1e-9 * std::max(max_re, 1e-300))
        throw std::runtime_error(
            "kernel table: symbol produced a non-real kernel (Hermitian symmetry "
            "broken)");
    return tab;
}

cplx axis_deriv_factor(double xi_axis, int k) {
    if (k == 0) return {1.0, 0.0};
    const double mag = std::pow(xi_axis, double(k));
    switch (k & 3) {
        case 0: return {mag, 0.0};
        case 1: return {0.0, mag};
        case 2: return {-mag, 0.0};
        default: return {0.0, -mag};
    }
}

double norm2(const std::array<double, 3>& xi, int dim) {
    double s = 0.0;
    for (int a = 0; a < dim; ++a) s += xi[a] * xi[a];
    return s;
}

}  // namespace

double KernelTable::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

KernelTable heat_kernel_table(double gamma, double t, int dim, double extent,
                              int samples, const KernelBuildOptions& opt) {
    return build_from_symbol(gamma, t, dim, extent, samples, opt,
                             [&](const std::array<double, 3>& xi) {
                                 const double r2 = norm2(xi, dim);
                                 return cplx{
                                     std::exp(-t * std::pow(r2, gamma / 2.0)), 0.0};
                             });
}

KernelTable lemma_kernel_table(double gamma, double t, int dim, int k,
                               double alpha, int axis, double extent,
                               int samples, const KernelBuildOptions& opt) {
    if (k < 0 || k > 12)
        throw std::invalid_argument("lemma_kernel_table: k must be in [0,12]");
    if (!(alpha > -dim))
        throw std::invalid_argument("lemma_kernel_table: alpha must exceed -d");
    if (axis < 0 || axis >= dim)
        throw std::invalid_argument("lemma_kernel_table: axis out of range");
    KernelTable tab = build_from_symbol(
        gamma, t, dim, extent, samples, opt,
        [&](const std::array<double, 3>& xi) {
            const double r2 = norm2(xi, dim);
            if (r2 == 0.0)
                return (k == 0 && alpha == 0.0) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            const double frac = alpha == 0.0 ? 1.0 : std::pow(r2, alpha / 2.0);
            return axis_deriv_factor(xi[axis], k) * frac *
                   std::exp(-t * std::pow(r2, gamma / 2.0));
        });
    tab.deriv_order = k;
    tab.deriv_axis = axis;
    tab.frac_order = alpha;
    return tab;
}

KernelTable oseen_kernel_table(double gamma, double t, int dim, int j, int m,
                               int k, double alpha, int axis, double extent,
                               int samples, const KernelBuildOptions& opt) {
    if (dim < 2)
        throw std::invalid_argument("oseen_kernel_table: projection needs dim >= 2");
    if (j < 0 || j >= dim || m < 0 || m >= dim)
        throw std::invalid_argument("oseen_kernel_table: component out of range");
    if (k < 0 || k > 12)
        throw std::invalid_argument("oseen_kernel_table: k must be in [0,12]");
    if (!(alpha > -dim))
        throw std::invalid_argument("oseen_kernel_table: alpha must exceed -d");
    if (axis < 0 || axis >= dim)
        throw std::invalid_argument("oseen_kernel_table: axis out of range");
    KernelTable tab = build_from_symbol(
        gamma, t, dim, extent, samples, opt,
        [&](const std::array<double, 3>& xi) {
            const double r2 = norm2(xi, dim);
            if (r2 == 0.0) return cplx{0.0, 0.0};  // mean carries no projection
            const double proj = -xi[j] * xi[m] / r2;
            const double frac = alpha == 0.0 ? 1.0 : std::pow(r2, alpha / 2.0);
            return axis_deriv_factor(xi[axis], k) * proj * frac *
                   std::exp(-t * std::pow(r2, gamma / 2.0));
        });
    tab.deriv_order = k;
    tab.deriv_axis = axis;
    tab.frac_order = alpha;
    tab.comp_j = j;
    tab.comp_m = m;
    return tab;
}

namespace {

double catmull_rom(double vm1, double v0, double v1, double v2, double s) {
    // Standard Catmull-Rom weights; s in [0,1] between v0 and v1.
    const double a = -0.5 * vm1 + 1.5 * v0 - 1.5 * v1 + 0.5 * v2;
    const double b = vm1 - 2.5 * v0 + 2.0 * v1 - 0.5 * v2;
    const double c = -0.5 * vm1 + 0.5 * v1;
    return ((a * s + b) * s + c) * s + v0;
}

double sample_recursive(const KernelTable& tab, const std::array<int, 3>& base,
                        const std::array<double, 3>& frac, int axis,
                        std::array<int, 3>& idx) {
    if (axis == tab.dim) {
        std::int64_t flat = 0;
        for (int a = 0; a < tab.dim; ++a) flat = flat * tab.samples + idx[a];
        return tab.values[flat];
    }
    double v[4];
    for (int s = 0; s < 4; ++s) {
        idx[axis] = base[axis] + s - 1;
        v[s] = sample_recursive(tab, base, frac, axis + 1, idx);
    }
    return catmull_rom(v[0], v[1], v[2], v[3], frac[axis]);
}

}  // namespace

double sample_table(const KernelTable& tab, const std::array<double, 3>& x) {
    std::array<int, 3> base{0, 0, 0};
    std::array<double, 3> frac{0.0, 0.0, 0.0};
    const double h = tab.spacing();
    for (int a = 0; a < tab.dim; ++a) {
        const double rel = (x[a] + tab.extent) / h;
        const int i0 = static_cast<int>(std::floor(rel));
        if (i0 < 1 || i0 + 2 >= tab.samples)
            throw std::invalid_argument(
                "sample_table: point too close to the window boundary for the "
                "cubic stencil");
        base[a] = i0;
        frac[a] = rel - i0;
    }
    std::array<int, 3> idx{0, 0, 0};
    return sample_recursive(tab, base, frac, 0, idx);
}

double scaling_collapse_error(const KernelTable& t1, const KernelTable& t2) {
    if (t1.dim != t2.dim || t1.gamma != t2.gamma ||
        t1.deriv_order != t2.deriv_order || t1.frac_order != t2.frac_order ||
        t1.comp_j != t2.comp_j || t1.comp_m != t2.comp_m)
        throw std::invalid_argument(
            "scaling_collapse_error: tables are not the same kernel family");
    if (!(t1.t < t2.t))
        throw std::invalid_argument("scaling_collapse_error: need t1 < t2");

    const double rho = std::pow(t1.t / t2.t, 1.0 / t1.gamma);
    const double power =
        t1.dim + t1.deriv_order + t1.frac_order;  // self-similar weight
    const double factor = std::pow(rho, power);

    const double sup2 = t2.max_abs();
    double worst = 0.0;
    std::array<int, 3> jv{0, 0, 0};
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (std::int64_t flat = 0; flat < t2.size(); ++flat) {
        std::int64_t rem = flat;
        for (int a = t2.dim - 1; a >= 0; --a) {
            jv[a] = static_cast<int>(rem % t2.samples);
            rem /= t2.samples;
        }
        bool ok = true;
        for (int a = 0; a < t2.dim; ++a) {
            x[a] = rho * t2.coord(jv[a]);
            // keep the cubic stencil of t1 in range
            const double rel = (x[a] + t1.extent) / t1.spacing();
            ok = ok && rel >= 1.0 && rel + 2.0 < t1.samples;
        }
        if (!ok) continue;
        const double predicted = factor * sample_table(t1, x);
        worst = std::max(worst, std::abs(t2.values[flat] - predicted));
    }
    return worst / sup2;
}

}  // namespace fns
