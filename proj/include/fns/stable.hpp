#pragma once

#include <array>
#include <vector>

namespace fns {

// Density of the one-sided stable law with Laplace transform exp(-lambda^a),
// a in (0,1), evaluated through Kanter's single-integral representation
//   f_a(u) = a / ((1-a) pi) u^{-1/(1-a)}
//            int_0^pi A(phi) exp(-A(phi) zeta) dphi,   zeta = u^{-a/(1-a)},
//   A(phi) = [sin(a phi)^a sin((1-a) phi)^{1-a} / sin phi]^{1/(1-a)}.
// The integrand is positive (no cancellation); the minimal exponent
// A(0) zeta is factored out so relative accuracy survives underflow, and the
// deep-underflow regime (A(0) zeta > 600) switches to the saddle-point form
//   f_a(u) ~ [2 pi a (1-a)]^{-1/2} (a/u)^{(2-a)/(2(1-a))} exp(-A(0) zeta),
// which is exact for a = 1/2 (Levy density).
double stable_density(double a, double u);

// Discretization of the subordination mixture for the dissipation semigroup:
//   exp(-t |xi|^gamma) = sum_i w_i exp(-s_i t^{2/gamma} |xi|^2 / 4),
// where s_i = 4 u_i and (u_i, w_i) is a trapezoid rule on the log axis for
// the a = gamma/2 stable density.
struct StableQuadrature {
    double a = 0;
    std::vector<double> s, w;

    // Discrete Laplace transform sum_i w_i exp(-lambda s_i / 4); equals
    // exp(-lambda^a) up to the validated tolerance.
    double laplace(double lambda) const;
};

// Builds the quadrature and validates the Laplace identity
// |laplace(lambda) - exp(-lambda^a)| <= 1e-6 on lambda in [0, 50];
// throws (suggesting a larger node_count) if validation fails.
// node_count in [32, 2048].
StableQuadrature build_stable_quadrature(double a, int node_count = 512);

// Subordinated evaluation of the dissipation kernel G_gamma(t, x) on R^d:
//   sum_i w_i (pi^{1/2} s_i^{1/2} t^{1/gamma})^{-d}
//            exp(-|x|^2 / (s_i t^{2/gamma})),
// gamma in [1, 2), t > 0. The quadrature must have been built with
// a = gamma/2.
double subordinated_heat_kernel(double gamma, double t, int dim,
                                const std::array<double, 3>& x,
                                const StableQuadrature& quad);

}  // namespace fns
