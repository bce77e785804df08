#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fns {

using bigint = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Hermite machinery (physicists' convention H_{n+1} = 2x H_n - 2n H_{n-1}).

// Raw H_n(x); the recurrence is accumulated in long double for n > 60 where
// cancellation between the two huge terms costs double-precision digits.
double hermite_eval(int n, double x);

struct CramerCheck {
    int n_max = 0;
    double worst_ratio = 0;
    int worst_n = 0;
    double worst_x = 0;
    bool pass = false;  // worst_ratio <= 1.09
};

// sup over an x >= 0 grid of |H_n(x)| exp(-x^2/2) / sqrt(2^n n!), n <= n_max.
// Evaluated with the self-normalized recurrence
//   h_{n+1} = x sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1},
// which never leaves [-O(1), O(1)], so no overflow enters the sweep.
CramerCheck check_cramer_bound(int n_max, int x_samples = 4800,
                               double x_max = 12.0);

// ---------------------------------------------------------------------------
// Weighted-sup inequality sup_{x>0} x^m exp(-x^2/8) = (4m/e)^{m/2}, m = k+d+2.

struct SupInequalityRow {
    int k = 0, m = 0;
    double closed_form = 0;
    double grid_max = 0;     // independent grid + parabolic refinement
    double normalized = 0;   // (closed_form / k^{k/2})^{1/(k+1)}
};

SupInequalityRow sup_inequality_check(int k, int d);

// ---------------------------------------------------------------------------
// Quadratic recurrence G(0) = 1, G(n) = 2 sum_{n1=0}^{n-1} G(n1) G(n-1-n1)
// (exact integers; closed form 2^n Catalan(n)).

bigint g_sequence(int n);
bigint catalan_number(int n);   // binomial route: C(2n, n) / (n + 1)
double g_growth_root(int n);    // G(n)^{1/(n+1)} -> 8 from below

// ---------------------------------------------------------------------------
// Derivative-cascade majorant recurrence (log-domain):
//   F(0) = C,
//   F(n) = C1 n^{1/(N gamma)} F(n-1)
//        + C1 sum_{n1=0}^{n-1} n^{n/N} / (n1^{n1/N} (n-1-n1)^{(n-1-n1)/N})
//                 F(n1) F(n-1-n1),
// checked against the closed majorant (C1 C)^{n+1} n^{n/N} G(n).

struct FSequenceReport {
    double C = 0, C1 = 0, gamma = 0;
    int N = 0;
    std::vector<double> log_f;      // ln F(n), n = 0..n_max
    std::vector<double> log_bound;  // ln((C1 C)^{n+1} n^{n/N} G(n))
    double max_log_ratio = 0;       // max ln(F / bound); <= 0 iff majorized
    bool majorized = false;
};

FSequenceReport f_sequence(int n_max, double C, double C1, int N, double gamma);

// ---------------------------------------------------------------------------
// Binomial-vs-Stirling combinatorial bound: for n = N k + l, n1 = N j + l - 1,
// n2 = N (k - j), the ratio binom(k,j) / (n^n / (n1^{n1} n2^{n2}))^{1/N}
// stays bounded (and decays in k). Binomials exact, ratio in log domain.

struct StirlingRow {
    int k = 0;
    double max_ratio = 0;  // over j in [0,k], l in [1, l_max]
};

std::vector<StirlingRow> binomial_stirling_sweep(int k_max, int N, int l_max = 4);

// ---------------------------------------------------------------------------
// Empirical product-rule constant for the fractional derivative:
//   ||Lambda^eps (f g)||_{p/2} /
//     (||Lambda^eps f||_p ||g||_p + ||Lambda^eps g||_p ||f||_p)
// over seeded random band-limited fields on the 1d torus (band < n/4 keeps
// the product alias-free). eps = 0 reduces to Hoelder: ratio <= 1/2.

struct LeibnizReport {
    double eps = 0, p = 0;
    int trials = 0;
    double max_ratio = 0, median_ratio = 0, mean_ratio = 0;
    bool pass = false;  // all finite, max <= 2 x median (no unbounded outlier)
};

LeibnizReport fractional_leibniz_check(double eps, double p, int n, int trials,
                                       std::uint64_t seed);

}  // namespace fns
