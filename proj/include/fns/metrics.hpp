#pragma once

#include <vector>

#include "fns/field.hpp"

namespace fns {

// Max |coefficient| (over components) per integer shell kappa <= |k| < kappa+1,
// kappa = 0 .. floor(sqrt(d) * n/2). Exponential tails of this envelope are
// what the radius estimators fit.
std::vector<double> shell_spectrum(const SpectralField& u);

struct RadiusEstimate {
    double radius = 0;     // -slope of log shell-max over the fit band, >= 0
    double intercept = 0;  // fitted log amplitude at kappa = 0
    double fit_r2 = 0;
    int shells_used = 0;
    bool reliable = false;  // >= 5 usable shells and fit_r2 >= 0.9
};

// Least-squares slope of log(shell max) over shells in [band_lo, band_hi]
// whose value exceeds rel_floor * max(spectrum). Exact on noiseless
// exponential spectra.
RadiusEstimate estimate_radius(const std::vector<double>& spectrum,
                               double rel_floor, int band_lo, int band_hi);

// Same fit, but the band is chosen self-similarly instead of at fixed
// shells: keep the shells whose depth below the spectral head, discounted by
// the known initial exponential type r0, falls in [depth_lo, depth_hi]:
//   depth(kappa) = log(max(spectrum) / spectrum(kappa)) - r0 * kappa.
// For a dissipative flow the discounted depth is ~ t |k|^gamma, so the band
// tracks the smoothing scale kappa ~ t^{-1/gamma} and the fitted slope minus
// r0 measures the smoothing increment at that scale (a fixed band would
// instead report the increment at its own frozen scale, ~ t^1). Shells at or
// below rel_floor * max are excluded as roundoff.
RadiusEstimate estimate_radius_smoothing(const std::vector<double>& spectrum,
                                         double r0, double depth_lo,
                                         double depth_hi,
                                         double rel_floor = 1e-13);

struct RadiusTrace {
    std::vector<double> times, radii, fit_r2;
    std::vector<char> reliable;

    void push(double t, const RadiusEstimate& e) {
        times.push_back(t);
        radii.push_back(e.radius);
        fit_r2.push_back(e.fit_r2);
        reliable.push_back(e.reliable ? 1 : 0);
    }
    std::size_t size() const { return times.size(); }
};

struct GrowthFit {
    double exponent = 0;   // slope of log(radius - r0) vs log t
    double log_prefactor = 0;
    double fit_r2 = 0;
    int points = 0;
};

// Fits radius(t) - r0 ~ c t^exponent over reliable trace entries with
// t in [t_lo, t_hi]. Throws if fewer than 3 usable points or if the radius
// never exceeds r0 on the window (no measurable growth).
GrowthFit radius_growth_fit(const RadiusTrace& trace, double r0, double t_lo,
                            double t_hi);

struct DerivativeBoundRow {
    int k = 0;
    double norm = 0;  // ||D^k u||_{q'}
    double c_k = 0;   // (t^{k/gamma + alpha'} norm / max(k,1)^k)^{1/(k+1)}
};

struct DerivativeBoundReport {
    double t = 0, gamma = 0, q_prime = 0, alpha_prime = 0;
    int axis = 0;
    std::vector<DerivativeBoundRow> rows;  // k = 0 .. k_max

    double max_c(int k_lo, int k_hi) const;  // max c_k over k in [k_lo, k_hi]
};

// Normalized derivative-growth constants along one axis: if the field is
// analytic with the expected smoothing, c_k stays bounded in k. t > 0;
// q_prime >= 2 (or infinity); alpha' = 1 - 1/gamma - d/(q' gamma).
DerivativeBoundReport derivative_bound_report(const SpectralField& u, double t,
                                              double gamma, double q_prime,
                                              int k_max, int axis = 0);

struct WeightedSupCheck {
    double q = 0, alpha = 0;
    double sup = 0, arg_t = 0;
    bool interior = false;  // sup attained strictly inside the sampled window
};

// sup_t t^alpha ||u(t)||_q over a sampled trajectory (t > 0 entries),
// alpha = 1 - 1/gamma - d/(q gamma). The finite sup with an interior argmax
// is the decay signature t^{-alpha} of the q-norm.
WeightedSupCheck lq_decay_check(const std::vector<double>& times,
                                const std::vector<double>& norms, double gamma,
                                int d, double q_prime);

struct SobolevDecayReport {
    std::vector<double> orders;
    std::vector<double> times;
    std::vector<std::vector<double>> norms;  // [order][time]
    // First record index from which each series is non-increasing to the end
    // (0 = monotone over the whole sample, size() = never settles).
    std::vector<std::size_t> monotone_from;
};

SobolevDecayReport sobolev_decay_report(const std::vector<double>& times,
                                        const std::vector<SpectralField>& snaps,
                                        const std::vector<double>& orders);

}  // namespace fns
