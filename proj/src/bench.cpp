#include "fns/bench.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fns/fft.hpp"
#include "fns/operators.hpp"

namespace {

// ln of an exact big integer, via a 100-digit float intermediate.
double log_bigint(const fns::bigint& v) {
    return static_cast<double>(
        boost::multiprecision::log(boost::multiprecision::cpp_bin_float_100(v)));
}

}  // namespace

namespace fns {

// ---------------------------------------------------------------------------
// Hermite.

double hermite_eval(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite_eval: n must be >= 0");
    if (n == 0) return 1.0;
    if (n <= 60) {
        double hm = 1.0, h = 2.0 * x;
        for (int j = 1; j < n; ++j) {
            const double hn = 2.0 * x * h - 2.0 * j * hm;
            hm = h;
            h = hn;
        }
        return h;
    }
    long double hm = 1.0L, h = 2.0L * static_cast<long double>(x);
    for (int j = 1; j < n; ++j) {
        const long double hn =
            2.0L * static_cast<long double>(x) * h - 2.0L * j * hm;
        hm = h;
        h = hn;
    }
    return static_cast<double>(h);
}

CramerCheck check_cramer_bound(int n_max, int x_samples, double x_max) {
    if (n_max < 0 || x_samples < 2)
        throw std::invalid_argument("check_cramer_bound: bad sweep parameters");
    CramerCheck chk;
    chk.n_max = n_max;
    for (int i = 0; i < x_samples; ++i) {
        const double x = x_max * i / (x_samples - 1);
        // h_0 = exp(-x^2/2), h_1 = sqrt(2) x exp(-x^2/2); the weight rides along.
        double hm = std::exp(-0.5 * x * x);
        double h = std::sqrt(2.0) * x * hm;
        if (std::abs(hm) > chk.worst_ratio) {
            chk.worst_ratio = std::abs(hm);
            chk.worst_n = 0;
            chk.worst_x = x;
        }
        for (int n = 1; n <= n_max; ++n) {
            if (std::abs(h) > chk.worst_ratio) {
                chk.worst_ratio = std::abs(h);
                chk.worst_n = n;
                chk.worst_x = x;
            }
            const double hn = x * std::sqrt(2.0 / (n + 1.0)) * h -
                              std::sqrt(n / (n + 1.0)) * hm;
            hm = h;
            h = hn;
        }
    }
    chk.pass = chk.worst_ratio <= 1.09;
    return chk;
}

// ---------------------------------------------------------------------------
// Weighted sup.

SupInequalityRow sup_inequality_check(int k, int d) {
    if (k < 0 || d < 1)
        throw std::invalid_argument("sup_inequality_check: need k >= 0, d >= 1");
    SupInequalityRow row;
    row.k = k;
    row.m = k + d + 2;
    const double m = row.m;
    row.closed_form = std::pow(4.0 * m / std::exp(1.0), 0.5 * m);

    // Independent route: dense grid on (0, 4 sqrt(m)] + parabolic refinement
    // of log f around the best point (log f = m log x - x^2/8 is smooth).
    auto logf = [m](double x) { return m * std::log(x) - x * x / 8.0; };
    const int samples = 20000;
    const double hi = 4.0 * std::sqrt(m);
    double best_x = hi / samples, best = logf(best_x);
    for (int i = 2; i <= samples; ++i) {
        const double x = hi * i / samples;
        const double v = logf(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    const double h = hi / samples;
    const double fm = logf(best_x - h), fp = logf(best_x + h);
    const double denom = fm - 2.0 * best + fp;
    double x_star = best_x;
    if (denom < 0.0) x_star = best_x + 0.5 * h * (fm - fp) / denom;
    row.grid_max = std::exp(logf(x_star));

    const double kk = k == 0 ? 1.0 : std::pow(double(k), 0.5 * k);
    row.normalized = std::pow(row.closed_form / kk, 1.0 / double(k + 1));
    return row;
}

// ---------------------------------------------------------------------------
// Integer recurrences.

bigint g_sequence(int n) {
    if (n < 0) throw std::invalid_argument("g_sequence: n must be >= 0");
    static thread_local std::vector<bigint> memo{bigint(1)};
    while (static_cast<int>(memo.size()) <= n) {
        const int nn = static_cast<int>(memo.size());
        bigint acc = 0;
        for (int n1 = 0; n1 < nn; ++n1) acc += memo[n1] * memo[nn - 1 - n1];
        memo.push_back(2 * acc);
    }
    return memo[n];
}

bigint catalan_number(int n) {
    if (n < 0) throw std::invalid_argument("catalan_number: n must be >= 0");
    // C(2n, n) / (n+1), built as an exact product.
    bigint num = 1;
    for (int i = 0; i < n; ++i) {
        num *= (2 * n - i);
        num /= (i + 1);  // exact at every step: prefix binomials are integers
    }
    return num / (n + 1);
}

double g_growth_root(int n) {
    return std::exp(log_bigint(g_sequence(n)) / double(n + 1));
}

// ---------------------------------------------------------------------------
// F-sequence majorization.

namespace {

// n^{n/N} contribution in logs with the 0^0 = 1 convention.
double nl(double n, int N) { return n <= 0.0 ? 0.0 : n * std::log(n) / N; }

double log_sum_exp(const std::vector<double>& xs) {
    double m = -1e300;
    for (double v : xs) m = std::max(m, v);
    if (m <= -1e300) return -1e300;
    double s = 0.0;
    for (double v : xs) s += std::exp(v - m);
    return m + std::log(s);
}

}  // namespace

FSequenceReport f_sequence(int n_max, double C, double C1, int N, double gamma) {
    if (n_max < 0 || !(C > 0) || !(C1 > 0) || N < 1 || !(gamma > 0))
        throw std::invalid_argument("f_sequence: bad parameters");
    FSequenceReport rep;
    rep.C = C;
    rep.C1 = C1;
    rep.N = N;
    rep.gamma = gamma;
    rep.log_f.push_back(std::log(C));
    const double lc1 = std::log(C1);

    for (int n = 1; n <= n_max; ++n) {
        std::vector<double> terms;
        terms.reserve(n + 1);
        terms.push_back(lc1 + std::log(double(n)) / (N * gamma) +
                        rep.log_f[n - 1]);
        for (int n1 = 0; n1 <= n - 1; ++n1) {
            const int n2 = n - 1 - n1;
            terms.push_back(lc1 + nl(n, N) - nl(n1, N) - nl(n2, N) +
                            rep.log_f[n1] + rep.log_f[n2]);
        }
        rep.log_f.push_back(log_sum_exp(terms));
    }

    rep.max_log_ratio = -1e300;
    for (int n = 0; n <= n_max; ++n) {
        // ln of the closed majorant (C1 C)^{n+1} n^{n/N} G(n)
        const double lb = (n + 1) * std::log(C1 * C) + nl(double(n), N) +
                          log_bigint(g_sequence(n));
        rep.log_bound.push_back(lb);
        rep.max_log_ratio =
            std::max(rep.max_log_ratio, rep.log_f[n] - rep.log_bound[n]);
    }
    rep.majorized = rep.max_log_ratio <= 1e-9;  // ties (n=1 equality) allowed
    return rep;
}

// ---------------------------------------------------------------------------
// Binomial vs Stirling.

std::vector<StirlingRow> binomial_stirling_sweep(int k_max, int N, int l_max) {
    if (k_max < 1 || N < 1 || l_max < 1)
        throw std::invalid_argument("binomial_stirling_sweep: bad parameters");
    std::vector<StirlingRow> rows;
    for (int k = 1; k <= k_max; ++k) {
        StirlingRow row;
        row.k = k;
        // exact binomial row via Pascal update
        bigint binom = 1;
        for (int j = 0; j <= k; ++j) {
            if (j > 0) {
                binom *= (k - j + 1);
                binom /= j;
            }
            const double lbin = log_bigint(binom);
            for (int l = 1; l <= l_max; ++l) {
                const double n = double(N) * k + l;
                const double n1 = double(N) * j + l - 1;
                const double n2 = double(N) * (k - j);
                const double lden = (nl(n, N) - nl(n1, N) - nl(n2, N));
                row.max_ratio = std::max(row.max_ratio, std::exp(lbin - lden));
            }
        }
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Fractional Leibniz.

namespace {

// Band-limited random real scalar on the 1d torus: unit-modulus phases with
// 1/(1+|k|) amplitude profile on 1 <= |k| <= band.
SpectralField random_band_field(const TorusGrid& g, int band,
                                std::mt19937_64& rng) {
    SpectralField f = make_spectral_field(g, 1);
    for (int k = 1; k <= band; ++k) {
        const double theta = kTwoPi * (double(rng() >> 11) * 0x1.0p-53);
        const cplx v = cplx{std::cos(theta), std::sin(theta)} / (1.0 + k);
        f.c[0][mode_index(g, {k, 0, 0})] = v;
        f.c[0][mode_index(g, {-k, 0, 0})] = std::conj(v);
    }
    return f;
}

}  // namespace

LeibnizReport fractional_leibniz_check(double eps, double p, int n, int trials,
                                       std::uint64_t seed) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("fractional_leibniz_check: eps must be in [0,1]");
    if (!(p >= 2.0))
        throw std::invalid_argument("fractional_leibniz_check: p must be >= 2");
    if (trials < 1)
        throw std::invalid_argument("fractional_leibniz_check: trials must be >= 1");
    const TorusGrid g = make_grid(1, n);
    const int band = n / 4 - 1;  // product of two band-limited fields stays exact
    if (band < 2)
        throw std::invalid_argument("fractional_leibniz_check: n too small");

    std::mt19937_64 rng(seed);
    LeibnizReport rep;
    rep.eps = eps;
    rep.p = p;
    rep.trials = trials;
    std::vector<double> ratios;
    ratios.reserve(trials);

    const std::int64_t mpts = g.total_modes();
    for (int trial = 0; trial < trials; ++trial) {
        SpectralField f = random_band_field(g, band, rng);
        SpectralField h = random_band_field(g, band, rng);
        const PhysicalField fp = to_physical(f);
        const PhysicalField hp = to_physical(h);
        PhysicalField prod = make_physical_field(g, 1);
        for (std::int64_t i = 0; i < mpts; ++i)
            prod.v[0][i] = fp.v[0][i] * hp.v[0][i];
        SpectralField fg = to_spectral(prod);

        SpectralField lf = f, lh = h;
        fractional_derivative(fg, eps);
        fractional_derivative(lf, eps);
        fractional_derivative(lh, eps);
        const double num = lp_norm(fg, p / 2.0);
        const double den = lp_norm(lf, p) * lp_norm(h, p) +
                           lp_norm(lh, p) * lp_norm(f, p);
        ratios.push_back(num / den);
    }

    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    rep.max_ratio = sorted.back();
    rep.median_ratio = sorted[sorted.size() / 2];
    for (double r : ratios) rep.mean_ratio += r;
    rep.mean_ratio /= trials;
    bool finite = true;
    for (double r : ratios) finite = finite && std::isfinite(r);
    rep.pass = finite && rep.max_ratio <= 2.0 * rep.median_ratio;
    return rep;
}

}  // namespace fns
