#pragma once

#include <array>
#include <cstdint>

namespace fns {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform periodic grid on [0, 2*pi)^d, n points per axis, d in {1,2,3}.
// Mode storage is row-major over axes in FFT index order: storage index
// i in [0, n) on an axis carries integer wavenumber i for i <= n/2-1 and
// i - n for i >= n/2 (so i = n/2 is the Nyquist mode -n/2).
struct TorusGrid {
    int dim = 0;
    int n = 0;

    std::int64_t total_modes() const {
        std::int64_t m = 1;
        for (int a = 0; a < dim; ++a) m *= n;
        return m;
    }
    double spacing() const { return kTwoPi / n; }

    int wavenumber(int i) const { return i < n / 2 ? i : i - n; }
    bool is_nyquist(int k) const { return k == -n / 2; }

    // 2/3-rule cutoff: modes with any |k_axis| >= cutoff are dropped.
    int dealias_cutoff() const { return n / 3 + 1; }
};

// Validates d in {1,2,3}, n even, 8 <= n <= 4096.
TorusGrid make_grid(int dim, int n);

// Flat storage index of the mode with integer wavenumber vector k.
inline std::int64_t mode_index(const TorusGrid& g, const std::array<int, 3>& k) {
    std::int64_t idx = 0;
    for (int a = 0; a < g.dim; ++a) {
        const int i = k[a] >= 0 ? k[a] : k[a] + g.n;
        idx = idx * g.n + i;
    }
    return idx;
}

// Calls f(flat_index, k) for every mode, k = integer wavenumber vector
// (unused trailing entries zero). Row-major: last axis fastest.
template <typename F>
void for_each_mode(const TorusGrid& g, F&& f) {
    std::array<int, 3> k{0, 0, 0};
    const int n = g.n;
    std::int64_t idx = 0;
    if (g.dim == 1) {
        for (int i0 = 0; i0 < n; ++i0) {
            k[0] = g.wavenumber(i0);
            f(idx++, k);
        }
    } else if (g.dim == 2) {
        for (int i0 = 0; i0 < n; ++i0) {
            k[0] = g.wavenumber(i0);
            for (int i1 = 0; i1 < n; ++i1) {
                k[1] = g.wavenumber(i1);
                f(idx++, k);
            }
        }
    } else {
        for (int i0 = 0; i0 < n; ++i0) {
            k[0] = g.wavenumber(i0);
            for (int i1 = 0; i1 < n; ++i1) {
                k[1] = g.wavenumber(i1);
                for (int i2 = 0; i2 < n; ++i2) {
                    k[2] = g.wavenumber(i2);
                    f(idx++, k);
                }
            }
        }
    }
}

}  // namespace fns
