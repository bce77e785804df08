#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "fns/fft.hpp"
#include "fns/field.hpp"
#include "fns/grid.hpp"
#include "fns/operators.hpp"

using namespace fns;

namespace {

SpectralField random_field(const TorusGrid& g, int comps, std::uint64_t seed,
                           double scale = 1.0) {
    SpectralField u = make_spectral_field(g, comps);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int c = 0; c < comps; ++c)
        for (auto& z : u.c[c]) z = scale * cplx(unif(rng), unif(rng));
    return u;
}

// Hermitian-symmetrized random field (real in physical space), optionally
// mean-free; Nyquist planes zeroed so derivative symmetry is unambiguous.
SpectralField random_real_field(const TorusGrid& g, int comps,
                                std::uint64_t seed, bool mean_free = true) {
    SpectralField u = random_field(g, comps, seed);
    SpectralField v = make_spectral_field(g, comps);
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
        bool nyq = false;
        std::array<int, 3> mk{0, 0, 0};
        for (int a = 0; a < g.dim; ++a) {
            nyq = nyq || g.is_nyquist(k[a]);
            mk[a] = -k[a];
        }
        if (nyq) return;
        const std::int64_t midx = mode_index(g, mk);
        for (int c = 0; c < comps; ++c)
            v.c[c][idx] = 0.5 * (u.c[c][idx] + std::conj(u.c[c][midx]));
    });
    if (mean_free)
        for (int c = 0; c < comps; ++c) v.c[c][0] = 0.0;
    v.mean_zero = mean_free;
    return v;
}

double max_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0;
    for (int c = 0; c < a.comps(); ++c)
        for (std::size_t i = 0; i < a.c[c].size(); ++i)
            m = std::max(m, std::abs(a.c[c][i] - b.c[c][i]));
    return m;
}

cplx inner(const SpectralField& a, const SpectralField& b) {
    cplx s = 0;
    for (int c = 0; c < a.comps(); ++c)
        for (std::size_t i = 0; i < a.c[c].size(); ++i)
            s += std::conj(a.c[c][i]) * b.c[c][i];
    return s;
}

}  // namespace

TEST_CASE("grid validation and index conventions") {
    CHECK_THROWS_AS(make_grid(0, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 15), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 8192), std::invalid_argument);

    const TorusGrid g = make_grid(2, 16);
    CHECK(g.total_modes() == 256);
    CHECK(g.wavenumber(0) == 0);
    CHECK(g.wavenumber(7) == 7);
    CHECK(g.wavenumber(8) == -8);  // Nyquist
    CHECK(g.wavenumber(15) == -1);
    CHECK(g.is_nyquist(-8));
    CHECK(!g.is_nyquist(8));
    CHECK(g.dealias_cutoff() == 6);  // 16/3 + 1

    // mode_index inverts the wavenumber map and for_each_mode agrees.
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
        CHECK(mode_index(g, k) == idx);
    });
}

TEST_CASE("dft convention: unnormalized, sign -1 forward") {
    // Delta at grid point 0 -> constant 1 spectrum (unnormalized forward).
    std::vector<cplx> in(8, 0.0), out(8, 0.0);
    in[0] = 1.0;
    dft({8}, in.data(), out.data(), -1);
    for (const cplx& z : out) CHECK(std::abs(z - 1.0) < 1e-14);

    // Forward of exp(+i k0 x) picks out index k0 with weight n.
    const int n = 16;
    std::vector<cplx> w(n), wf(n);
    for (int j = 0; j < n; ++j)
        w[j] = std::exp(cplx(0, 1) * (3.0 * j * kTwoPi / n));
    dft({n}, w.data(), wf.data(), -1);
    CHECK(std::abs(wf[3] - double(n)) < 1e-12 * n);
    for (int i = 0; i < n; ++i)
        if (i != 3) CHECK(std::abs(wf[i]) < 1e-11);
}

TEST_CASE("fft round trip and single-mode collocation") {
    for (int dim : {1, 2, 3}) {
        const TorusGrid g = make_grid(dim, dim == 3 ? 8 : 16);
        SpectralField u = random_real_field(g, dim == 1 ? 1 : dim, 7 + dim);
        const PhysicalField up = to_physical(u);
        const SpectralField back = to_spectral(up);
        CHECK(max_diff(u, back) < 1e-13);
    }

    // cos(3 x1) on a 2d grid: modes (+-3, 0) carry 1/2.
    const TorusGrid g = make_grid(2, 16);
    PhysicalField up = make_physical_field(g, 1);
    for (int i0 = 0; i0 < g.n; ++i0)
        for (int i1 = 0; i1 < g.n; ++i1)
            up.v[0][std::size_t(i0) * g.n + i1] = std::cos(3.0 * i0 * g.spacing());
    const SpectralField u = to_spectral(up);
    CHECK(std::abs(u.c[0][mode_index(g, {3, 0, 0})] - 0.5) < 1e-14);
    CHECK(std::abs(u.c[0][mode_index(g, {-3, 0, 0})] - 0.5) < 1e-14);
    CHECK(std::abs(u.c[0][mode_index(g, {1, 0, 0})]) < 1e-14);
}

TEST_CASE("Parseval: energy matches the physical L2 norm") {
    const TorusGrid g = make_grid(2, 32);
    const SpectralField u = random_real_field(g, 2, 99);
    const PhysicalField up = to_physical(u);
    const double l2 = lp_norm(up, 2.0);
    CHECK(energy(u) == doctest::Approx(l2 * l2).epsilon(1e-10));
    // Spectral-side lp_norm(.,2) agrees with the physical route.
    CHECK(lp_norm(u, 2.0) == doctest::Approx(l2).epsilon(1e-10));
}

TEST_CASE("lp_norm closed forms") {
    const TorusGrid g = make_grid(2, 32);

    // u = (sin x2, 0): ||u||_2 = sqrt(2 pi^2), ||u||_inf = 1. |u| kinks at the
    // zeros, so the p = 1 rectangle rule is only second-order toward 8 pi; its
    // grid sum has the exact closed form sum_j |sin(2 pi j / n)| = 2 cot(pi/n).
    SpectralField u = make_spectral_field(g, 2);
    u.c[0][mode_index(g, {0, 1, 0})] = cplx(0, -0.5);
    u.c[0][mode_index(g, {0, -1, 0})] = cplx(0, 0.5);
    CHECK(lp_norm(u, 2.0) == doctest::Approx(std::sqrt(2.0 * M_PI * M_PI)).epsilon(1e-12));
    const double l1_grid = (8.0 * M_PI * M_PI / g.n) / std::tan(M_PI / g.n);
    CHECK(lp_norm(u, 1.0) == doctest::Approx(l1_grid).epsilon(1e-12));
    CHECK(lp_norm(u, 1.0) == doctest::Approx(8.0 * M_PI).epsilon(4.0 / (g.n * g.n)));
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(lp_norm(u, inf) == doctest::Approx(1.0).epsilon(1e-12));
    // p = 4: integral of sin^4 over the torus = 4 pi^2 * 3/8.
    CHECK(lp_norm(u, 4.0) ==
          doctest::Approx(std::pow(4.0 * M_PI * M_PI * 3.0 / 8.0, 0.25)).epsilon(1e-12));

    // Unit-magnitude field (cos x1, sin x1): |u(x)| = 1 everywhere.
    SpectralField w = make_spectral_field(g, 2);
    w.c[0][mode_index(g, {1, 0, 0})] = 0.5;
    w.c[0][mode_index(g, {-1, 0, 0})] = 0.5;
    w.c[1][mode_index(g, {1, 0, 0})] = cplx(0, -0.5);
    w.c[1][mode_index(g, {-1, 0, 0})] = cplx(0, 0.5);
    for (double p : {1.0, 2.0, 3.0}) {
        CHECK(lp_norm(w, p) ==
              doctest::Approx(std::pow(4.0 * M_PI * M_PI, 1.0 / p)).epsilon(1e-12));
    }
    CHECK(lp_norm(w, inf) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(lp_norm(w, 0.5), std::invalid_argument);
}

TEST_CASE("Leray projection: algebra and annihilation") {
    const TorusGrid g = make_grid(2, 16);

    // Explicit 2d check at k = (1,1): P (1,0) = (1/2, -1/2).
    SpectralField u = make_spectral_field(g, 2);
    const std::int64_t idx = mode_index(g, {1, 1, 0});
    u.c[0][idx] = 1.0;
    leray_project(u);
    CHECK(std::abs(u.c[0][idx] - 0.5) < 1e-15);
    CHECK(std::abs(u.c[1][idx] + 0.5) < 1e-15);
    CHECK(u.div_free);

    // Idempotence and divergence annihilation on a random field.
    SpectralField v = random_real_field(g, 2, 21);
    const double scale = max_coeff(v);
    leray_project(v);
    CHECK(divergence_sup(v) < 1e-14 * scale);
    SpectralField v2 = v;
    leray_project(v2);
    CHECK(max_diff(v, v2) < 1e-15 * scale);

    // Gradient fields are annihilated: u = grad phi.
    SpectralField phi = random_real_field(g, 1, 34);
    SpectralField grad = make_spectral_field(g, 2);
    for_each_mode(g, [&](std::int64_t i, const std::array<int, 3>& k) {
        grad.c[0][i] = cplx(0, k[0]) * phi.c[0][i];
        grad.c[1][i] = cplx(0, k[1]) * phi.c[0][i];
    });
    const double gscale = max_coeff(grad);
    leray_project(grad);
    CHECK(max_coeff(grad) < 1e-14 * gscale);

    // k = 0 mode is untouched; scalar input rejected.
    SpectralField m = make_spectral_field(g, 2);
    m.c[0][0] = 3.0;
    leray_project(m);
    CHECK(std::abs(m.c[0][0] - 3.0) < 1e-15);
    SpectralField s = make_spectral_field(g, 1);
    CHECK_THROWS_AS(leray_project(s), std::invalid_argument);
}

TEST_CASE("semigroup: multiplier, composition, heat limit") {
    const TorusGrid g = make_grid(2, 16);
    SpectralField u = make_spectral_field(g, 1);
    const std::int64_t idx = mode_index(g, {2, 1, 0});
    u.c[0][idx] = cplx(0.3, -0.7);
    u.c[0][0] = 1.5;  // mean mode: |k|^gamma = 0 -> untouched

    SpectralField v = u;
    apply_semigroup(v, 1.5, 0.4);
    const double lam = std::pow(5.0, 0.75);  // |k|^gamma, |k|^2 = 5
    CHECK(std::abs(v.c[0][idx] - u.c[0][idx] * std::exp(-0.4 * lam)) < 1e-15);
    CHECK(std::abs(v.c[0][0] - 1.5) < 1e-15);

    // Semigroup law S(t) S(s) = S(t+s).
    SpectralField a = random_real_field(g, 1, 5);
    SpectralField b = a;
    apply_semigroup(a, 1.3, 0.2);
    apply_semigroup(a, 1.3, 0.5);
    apply_semigroup(b, 1.3, 0.7);
    CHECK(max_diff(a, b) < 1e-15);

    // gamma = 2 is the heat multiplier exp(-t |k|^2).
    SpectralField h = make_spectral_field(g, 1);
    h.c[0][idx] = 1.0;
    apply_semigroup(h, 2.0, 0.1);
    CHECK(std::abs(h.c[0][idx] - std::exp(-0.5)) < 1e-15);

    CHECK_THROWS_AS(apply_semigroup(h, 2.5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(apply_semigroup(h, 1.5, -0.1), std::invalid_argument);
}

TEST_CASE("fractional derivative: symbol, composition, mean handling") {
    const TorusGrid g = make_grid(2, 16);
    SpectralField u = make_spectral_field(g, 1);
    const std::int64_t idx = mode_index(g, {3, -4, 0});  // |k| = 5
    u.c[0][idx] = 2.0;
    u.c[0][0] = 1.0;

    SpectralField v = u;
    fractional_derivative(v, 0.5);
    CHECK(std::abs(v.c[0][idx] - 2.0 * std::sqrt(5.0)) < 1e-14);
    CHECK(std::abs(v.c[0][0]) == 0.0);  // homogeneous symbol zeroes the mean

    // alpha = 0 is the identity (mean kept).
    SpectralField id = u;
    fractional_derivative(id, 0.0);
    CHECK(max_diff(id, u) == 0.0);

    // Composition on mean-free fields: Lambda^a Lambda^b = Lambda^{a+b}.
    SpectralField a = random_real_field(g, 1, 11);
    SpectralField b = a;
    fractional_derivative(a, 0.7);
    fractional_derivative(a, 0.6);
    fractional_derivative(b, 1.3);
    CHECK(max_diff(a, b) < 1e-13 * max_coeff(b));

    // Negative order inverts within the valid range; -d is rejected.
    SpectralField c = random_real_field(g, 1, 12);
    SpectralField cc = c;
    fractional_derivative(cc, 1.0);
    fractional_derivative(cc, -1.0);
    CHECK(max_diff(cc, c) < 1e-13 * max_coeff(c));
    CHECK_THROWS_AS(fractional_derivative(c, -2.0), std::invalid_argument);
}

TEST_CASE("partial derivative: trig oracle and Nyquist zeroing") {
    const TorusGrid g = make_grid(2, 16);

    // d/dx1 cos(3 x1) = -3 sin(3 x1); second derivative -9 cos(3 x1).
    PhysicalField up = make_physical_field(g, 1);
    for (int i0 = 0; i0 < g.n; ++i0)
        for (int i1 = 0; i1 < g.n; ++i1)
            up.v[0][std::size_t(i0) * g.n + i1] = std::cos(3.0 * i0 * g.spacing());
    SpectralField u = to_spectral(up);

    SpectralField d1 = u;
    partial_derivative(d1, 0, 1);
    const PhysicalField d1p = to_physical(d1);
    double err = 0;
    for (int i0 = 0; i0 < g.n; ++i0)
        for (int i1 = 0; i1 < g.n; ++i1)
            err = std::max(err, std::abs(d1p.v[0][std::size_t(i0) * g.n + i1] +
                                         3.0 * std::sin(3.0 * i0 * g.spacing())));
    CHECK(err < 1e-12);

    SpectralField d2 = u;
    partial_derivative(d2, 0, 2);
    CHECK(std::abs(d2.c[0][mode_index(g, {3, 0, 0})] + 9.0 * 0.5) < 1e-13);

    // Derivative along the other axis kills the x1-only field.
    SpectralField dy = u;
    partial_derivative(dy, 1, 1);
    CHECK(max_coeff(dy) < 1e-13);

    // Nyquist plane of the differentiated axis is zeroed (odd symbol).
    SpectralField ny = make_spectral_field(g, 1);
    ny.c[0][mode_index(g, {-8, 2, 0})] = 1.0;
    SpectralField ny1 = ny;
    partial_derivative(ny1, 0, 1);
    CHECK(std::abs(ny1.c[0][mode_index(g, {-8, 2, 0})]) == 0.0);
    SpectralField ny2 = ny;
    partial_derivative(ny2, 1, 1);  // other axis: mode survives with factor i*2
    CHECK(std::abs(ny2.c[0][mode_index(g, {-8, 2, 0})] - cplx(0, 2)) < 1e-15);

    CHECK_THROWS_AS(partial_derivative(ny, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(partial_derivative(ny, 0, -1), std::invalid_argument);
}

TEST_CASE("dealias truncation: 2/3 cutoff and Nyquist") {
    const TorusGrid g = make_grid(2, 16);  // cutoff 6
    SpectralField u = make_spectral_field(g, 1);
    const std::int64_t keep = mode_index(g, {5, -5, 0});
    const std::int64_t drop = mode_index(g, {6, 0, 0});
    const std::int64_t nyq = mode_index(g, {-8, 1, 0});
    u.c[0][keep] = 1.0;
    u.c[0][drop] = 1.0;
    u.c[0][nyq] = 1.0;
    dealias_truncate(u);
    CHECK(std::abs(u.c[0][keep] - 1.0) == 0.0);
    CHECK(std::abs(u.c[0][drop]) == 0.0);
    CHECK(std::abs(u.c[0][nyq]) == 0.0);
}

TEST_CASE("nonlinear term: structure and energy orthogonality") {
    const TorusGrid g = make_grid(2, 32);

    // Random divergence-free data: N(u) is mean-zero, divergence-free, and
    // L2-orthogonal to u (the advective term moves energy, never makes it).
    SpectralField u = random_real_field(g, 2, 3);
    leray_project(u);
    dealias_truncate(u);
    const SpectralField n = nonlinear_term(u);
    CHECK(n.mean_zero);
    CHECK(n.div_free);
    CHECK(std::abs(n.c[0][0]) == 0.0);
    CHECK(divergence_sup(n) < 1e-13 * std::max(1.0, max_coeff(n)));
    const double scale = std::sqrt(energy(u)) * std::sqrt(energy(n));
    CHECK(std::abs(inner(u, n).real()) < 1e-11 * std::max(scale, 1e-30));

    // Shear and Taylor-Green advective terms are pure gradients: N == 0.
    SpectralField shear = make_spectral_field(g, 2);
    shear.c[0][mode_index(g, {0, 1, 0})] = cplx(0, -0.5);
    shear.c[0][mode_index(g, {0, -1, 0})] = cplx(0, 0.5);
    shear.mean_zero = shear.div_free = true;
    CHECK(max_coeff(nonlinear_term(shear)) < 1e-15);

    SpectralField tg = make_spectral_field(g, 2);
    // sin x1 cos x2 and -cos x1 sin x2 across the four (+-1, +-1) modes.
    const cplx mi(0, -1);
    tg.c[0][mode_index(g, {1, 1, 0})] = mi * 0.25;
    tg.c[0][mode_index(g, {1, -1, 0})] = mi * 0.25;
    tg.c[0][mode_index(g, {-1, 1, 0})] = -mi * 0.25;
    tg.c[0][mode_index(g, {-1, -1, 0})] = -mi * 0.25;
    tg.c[1][mode_index(g, {1, 1, 0})] = -mi * 0.25;
    tg.c[1][mode_index(g, {-1, 1, 0})] = -mi * 0.25;
    tg.c[1][mode_index(g, {1, -1, 0})] = mi * 0.25;
    tg.c[1][mode_index(g, {-1, -1, 0})] = mi * 0.25;
    tg.mean_zero = tg.div_free = true;
    CHECK(divergence_sup(tg) < 1e-15);
    CHECK(max_coeff(nonlinear_term(tg)) < 1e-15);

    // Quadratic interaction oracle: u with modes (1,0) and (0,1) only.
    //   u = (sin x2, sin x1):  u.grad u = (sin x1 cos x2, sin x2 cos x1),
    // whose Leray projection has known coefficients at (1, +-1) and (+-1, 1).
    SpectralField w = make_spectral_field(g, 2);
    w.c[0][mode_index(g, {0, 1, 0})] = cplx(0, -0.5);
    w.c[0][mode_index(g, {0, -1, 0})] = cplx(0, 0.5);
    w.c[1][mode_index(g, {1, 0, 0})] = cplx(0, -0.5);
    w.c[1][mode_index(g, {-1, 0, 0})] = cplx(0, 0.5);
    w.mean_zero = w.div_free = true;
    const SpectralField nw = nonlinear_term(w);
    // (u.grad u)_1 = sin x1 cos x2 -> modes (+-1, +-1) with weight -i/4 sgn(k1).
    // Project P at k=(1,1): (I - kk^T/2) acts on ((-i/4), (-i/4)) -> (0,0)...
    // components at (1,1): raw = (-i/4, -i/4), projected = raw - k (k.raw)/2
    //   k.raw = -i/2, k (k.raw)/2 = (-i/4, -i/4) -> projected = 0.
    CHECK(std::abs(nw.c[0][mode_index(g, {1, 1, 0})]) < 1e-15);
    // At k=(1,-1): raw_1 = -i/4 (from sin x1 cos x2), raw_2 = +i/4 (sym.)
    //   k.raw = (1)(-i/4) + (-1)(i/4) = -i/2; projected_1 = -i/4 - (1)(-i/2)/2 = 0
    // so the projected interaction vanishes mode-by-mode for this pair.
    CHECK(max_coeff(nw) < 1e-15);

    // Non-divergence-free input is rejected.
    SpectralField bad = random_real_field(g, 2, 8);
    bad.div_free = false;
    CHECK_THROWS_AS(nonlinear_term(bad), std::invalid_argument);
}

TEST_CASE("sobolev norm reduces to Parseval at s = 0") {
    const TorusGrid g = make_grid(2, 16);
    const SpectralField u = random_real_field(g, 2, 17);
    CHECK(sobolev_norm(u, 0.0) == doctest::Approx(std::sqrt(energy(u))).epsilon(1e-12));
    // Single mode: H^s weight is (1 + |k|^2)^{s/2}.
    SpectralField v = make_spectral_field(g, 1);
    v.c[0][mode_index(g, {2, 0, 0})] = 1.0;
    const double expect = std::sqrt(std::pow(4.0 * M_PI * M_PI, 1.0) *
                                    std::pow(5.0, 1.5));
    CHECK(sobolev_norm(v, 1.5) == doctest::Approx(expect).epsilon(1e-12));
}
