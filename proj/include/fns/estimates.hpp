#pragma once

#include <string>
#include <vector>

#include "fns/kernel_tables.hpp"
#include "fns/stable.hpp"

namespace fns {

// One verified quantitive claim: a measured sup (weighted decay, norm, ...),
// the growth-normalized constant it implies, and the threshold it was held
// against.
struct EstimateReport {
    std::string label;
    double gamma = 0, alpha = 0, p = 0, t = 0;
    int dim = 0, k = 0;
    double measured_sup = 0;
    double argmax = 0;  // |x| (or t) where the sup was attained
    double normalized_constant = 0;
    double threshold = 0;
    bool pass = false;
    double exponent_measured = 0, exponent_expected = 0;  // norm-decay checks
};

// Weighted spatial decay of a kernel table:
//   measured_sup = max_x (1 + |x|)^{d + k + alpha} |K(x)|,
//   normalized_constant = (measured_sup / max(k,1)^k)^{1/(k+1)}.
// pass = finite and (threshold <= 0 or measured normalized constant below it).
// Requires extent >= 8 (smaller windows never reach the tail plateau).
EstimateReport verify_kernel_decay(const KernelTable& tab, double threshold);

// Decay sweep over k = 0..k_max for one projected component at fixed alpha;
// thresholds default to 4x the max normalized constant over k <= 1.
std::vector<EstimateReport> oseen_decay_sweep(double gamma, int dim, int j,
                                              int m, int k_max, double alpha,
                                              double extent, int samples,
                                              const KernelBuildOptions& opt = {});

struct LemmaNormOptions {
    double extent = 256.0;
    int samples = 32768;
    int padding = 2;
    double exponent_tol = 1e-3;
};

// ||D^k Lambda^alpha G_gamma(t)||_{L^p} at t = 1 and t = 2; the measured
// log2 ratio must match the selfsimilar exponent
//   -(k + alpha)/gamma - (d/gamma)(1 - 1/p)
// within exponent_tol. p in {1, 2, inf}; hypotheses: alpha in [-0.9, 1],
// k + alpha >= 0.1 or k = alpha = 0.
EstimateReport verify_lemma_norms(double gamma, int dim, int k, double alpha,
                                  double p, const LemmaNormOptions& opt = {});

// sup-norm disagreement (relative to the table max) between the
// table and the subordination mixture evaluated at the same points.
// quad must have been built with a = gamma/2.
double cross_method_error(const KernelTable& heat_table,
                          const StableQuadrature& quad);

}  // namespace fns
