#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace fns {

// Free-space kernel sampled on the uniform window [-extent, extent)^d with
// `samples` points per axis (spacing 2 extent / samples). Values come from a
// backward DFT of the Fourier symbol on a grid enlarged by `padding`, so the
// construction actually computes the periodization of the kernel with alias
// period P = padding * 2 * extent; padding >= 2 keeps the first image off the
// window (padding 1 folds it straight onto the tails).
struct KernelTable {
    double gamma = 0, t = 0;
    int dim = 0;
    int deriv_order = 0;   // k in D^k along deriv_axis
    int deriv_axis = 0;
    double frac_order = 0; // alpha in Lambda^alpha
    int comp_j = -1, comp_m = -1;  // projection component; (-1,-1) = scalar family
    double extent = 0;
    int samples = 0;
    std::vector<double> values;  // row-major over axes

    double spacing() const { return 2.0 * extent / samples; }
    double coord(int i) const { return -extent + i * spacing(); }
    std::int64_t size() const {
        std::int64_t s = 1;
        for (int a = 0; a < dim; ++a) s *= samples;
        return s;
    }
    double max_abs() const;
};

struct KernelBuildOptions {
    int padding = 2;
};

// G_gamma(t, .): symbol exp(-t |xi|^gamma).
KernelTable heat_kernel_table(double gamma, double t, int dim, double extent,
                              int samples, const KernelBuildOptions& opt = {});

// D^k Lambda^alpha G_gamma(t, .): symbol (i xi_axis)^k |xi|^alpha exp(-t|xi|^gamma).
KernelTable lemma_kernel_table(double gamma, double t, int dim, int k,
                               double alpha, int axis, double extent,
                               int samples, const KernelBuildOptions& opt = {});

// Projected (divergence-free) kernel component:
//   symbol -xi_j xi_m / |xi|^2 (i xi_axis)^k |xi|^alpha exp(-t|xi|^gamma),
// so that sum_j of the (j,j) components is -G (the mean mode carries no
// projection and is set to zero).
KernelTable oseen_kernel_table(double gamma, double t, int dim, int j, int m,
                               int k, double alpha, int axis, double extent,
                               int samples, const KernelBuildOptions& opt = {});

// Catmull-Rom cubic interpolation of the table at x (componentwise in each
// axis); x must keep the 4-point stencil inside the window.
double sample_table(const KernelTable& tab, const std::array<double, 3>& x);

// Binary export (magic FNK1, little-endian header + float64 payload in
// row-major axis order). Writes atomically; the reader validates the header
// and exact payload size.
void write_kernel_table(const std::string& path, const KernelTable& tab);
KernelTable read_kernel_table(const std::string& path);

// Self-similarity residual between two tables of the same family at t1 < t2:
//   sup_x |T2(x) - rho^{d+k+alpha} T1(rho x)| / sup |T2|,
// rho = (t1/t2)^{1/gamma}; T1 is sampled by cubic interpolation at the
// rescaled (generically off-grid) points.
double scaling_collapse_error(const KernelTable& t1, const KernelTable& t2);

}  // namespace fns
