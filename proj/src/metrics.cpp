#include "fns/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fns/operators.hpp"

namespace fns {

namespace {

struct LineFit {
    double slope = 0, intercept = 0, r2 = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = (sxx > 0) ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    if (syy > 0) {
        const double ssres = syy - f.slope * sxy;
        f.r2 = 1.0 - ssres / syy;
    } else {
        f.r2 = 1.0;  // constant data, perfectly fit by a flat line
    }
    return f;
}

}  // namespace

std::vector<double> shell_spectrum(const SpectralField& u) {
    const int d = u.grid.dim;
    const int kmax =
        static_cast<int>(std::floor(std::sqrt(double(d)) * (u.grid.n / 2))) + 1;
    std::vector<double> shells(kmax + 1, 0.0);
    for_each_mode(u.grid, [&](std::int64_t idx, const std::array<int, 3>& k) {
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) k2 += double(k[a]) * double(k[a]);
        const int shell = static_cast<int>(std::floor(std::sqrt(k2)));
        for (const auto& comp : u.c)
            shells[shell] = std::max(shells[shell], std::abs(comp[idx]));
    });
    return shells;
}

RadiusEstimate estimate_radius(const std::vector<double>& spectrum,
                               double rel_floor, int band_lo, int band_hi) {
    if (!(rel_floor > 0)) throw std::invalid_argument("estimate_radius: floor must be > 0");
    if (band_lo < 0 || band_hi < band_lo)
        throw std::invalid_argument("estimate_radius: bad fit band");
    double top = 0.0;
    for (double v : spectrum) top = std::max(top, v);
    RadiusEstimate est;
    if (top == 0.0) return est;  // empty spectrum: radius 0, unreliable

    std::vector<double> xs, ys;
    const int hi = std::min<int>(band_hi, static_cast<int>(spectrum.size()) - 1);
    for (int kappa = band_lo; kappa <= hi; ++kappa) {
        if (spectrum[kappa] > rel_floor * top) {
            xs.push_back(double(kappa));
            ys.push_back(std::log(spectrum[kappa]));
        }
    }
    est.shells_used = static_cast<int>(xs.size());
    if (est.shells_used < 2) return est;
    const LineFit f = fit_line(xs, ys);
    est.radius = std::max(0.0, -f.slope);
    est.intercept = f.intercept;
    est.fit_r2 = f.r2;
    est.reliable = est.shells_used >= 5 && est.fit_r2 >= 0.9;
    return est;
}

RadiusEstimate estimate_radius_smoothing(const std::vector<double>& spectrum,
                                         double r0, double depth_lo,
                                         double depth_hi, double rel_floor) {
    if (!(r0 >= 0)) throw std::invalid_argument("estimate_radius_smoothing: r0 < 0");
    if (!(depth_lo >= 0) || !(depth_hi > depth_lo))
        throw std::invalid_argument("estimate_radius_smoothing: bad depth window");
    double top = 0.0;
    for (double v : spectrum) top = std::max(top, v);
    RadiusEstimate est;
    if (top == 0.0) return est;

    std::vector<double> xs, ys;
    for (std::size_t kappa = 0; kappa < spectrum.size(); ++kappa) {
        const double v = spectrum[kappa];
        if (!(v > rel_floor * top)) continue;
        const double depth = std::log(top / v) - r0 * double(kappa);
        if (depth < depth_lo || depth > depth_hi) continue;
        xs.push_back(double(kappa));
        ys.push_back(std::log(v));
    }
    est.shells_used = static_cast<int>(xs.size());
    if (est.shells_used < 2) return est;
    const LineFit f = fit_line(xs, ys);
    est.radius = std::max(0.0, -f.slope);
    est.intercept = f.intercept;
    est.fit_r2 = f.r2;
    est.reliable = est.shells_used >= 5 && est.fit_r2 >= 0.9;
    return est;
}

GrowthFit radius_growth_fit(const RadiusTrace& trace, double r0, double t_lo,
                            double t_hi) {
    std::vector<double> xs, ys;
    bool any_in_window = false;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const double t = trace.times[i];
        if (t < t_lo || t > t_hi || t <= 0) continue;
        any_in_window = true;
        if (!trace.reliable[i]) continue;
        if (trace.radii[i] > r0) {
            xs.push_back(std::log(t));
            ys.push_back(std::log(trace.radii[i] - r0));
        }
    }
    if (!any_in_window)
        throw std::invalid_argument("radius_growth_fit: no trace samples in window");
    if (xs.empty())
        throw std::runtime_error(
            "radius_growth_fit: radius never exceeds r0 on the window (no "
            "measurable growth)");
    if (xs.size() < 3)
        throw std::runtime_error("radius_growth_fit: fewer than 3 usable samples");
    const LineFit f = fit_line(xs, ys);
    GrowthFit g;
    g.exponent = f.slope;
    g.log_prefactor = f.intercept;
    g.fit_r2 = f.r2;
    g.points = static_cast<int>(xs.size());
    return g;
}

double DerivativeBoundReport::max_c(int k_lo, int k_hi) const {
    double m = 0.0;
    for (const auto& row : rows)
        if (row.k >= k_lo && row.k <= k_hi) m = std::max(m, row.c_k);
    return m;
}

DerivativeBoundReport derivative_bound_report(const SpectralField& u, double t,
                                              double gamma, double q_prime,
                                              int k_max, int axis) {
    if (!(t > 0)) throw std::invalid_argument("derivative_bound_report: t must be > 0");
    if (!(q_prime >= 2))
        throw std::invalid_argument("derivative_bound_report: q' must be >= 2");
    if (k_max < 0 || k_max > 40)
        throw std::invalid_argument("derivative_bound_report: k_max out of range");

    DerivativeBoundReport rep;
    rep.t = t;
    rep.gamma = gamma;
    rep.q_prime = q_prime;
    rep.axis = axis;
    const int d = u.grid.dim;
    rep.alpha_prime =
        1.0 - 1.0 / gamma - (std::isinf(q_prime) ? 0.0 : d / (q_prime * gamma));

    SpectralField w = u;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) partial_derivative(w, axis, 1);  // D^k built incrementally
        DerivativeBoundRow row;
        row.k = k;
        row.norm = lp_norm(w, q_prime);
        const double kk = (k == 0) ? 1.0 : std::pow(double(k), double(k));
        const double weighted =
            std::pow(t, double(k) / gamma + rep.alpha_prime) * row.norm / kk;
        row.c_k = std::pow(weighted, 1.0 / double(k + 1));
        rep.rows.push_back(row);
    }
    return rep;
}

WeightedSupCheck lq_decay_check(const std::vector<double>& times,
                                const std::vector<double>& norms, double gamma,
                                int d, double q_prime) {
    if (times.size() != norms.size() || times.size() < 3)
        throw std::invalid_argument("lq_decay_check: need >= 3 aligned samples");
    WeightedSupCheck chk;
    chk.q = q_prime;
    chk.alpha =
        1.0 - 1.0 / gamma - (std::isinf(q_prime) ? 0.0 : d / (q_prime * gamma));
    std::size_t first = times.size(), best = times.size();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] <= 0) continue;
        if (first == times.size()) first = i;
        const double w = std::pow(times[i], chk.alpha) * norms[i];
        if (best == times.size() || w > chk.sup) {
            chk.sup = w;
            chk.arg_t = times[i];
            best = i;
        }
    }
    if (best == times.size())
        throw std::invalid_argument("lq_decay_check: no positive-time samples");
    chk.interior = best > first && best + 1 < times.size();
    return chk;
}

SobolevDecayReport sobolev_decay_report(const std::vector<double>& times,
                                        const std::vector<SpectralField>& snaps,
                                        const std::vector<double>& orders) {
    if (times.size() != snaps.size())
        throw std::invalid_argument("sobolev_decay_report: times/snapshots mismatch");
    SobolevDecayReport rep;
    rep.orders = orders;
    rep.times = times;
    rep.norms.assign(orders.size(), std::vector<double>(times.size(), 0.0));
    for (std::size_t oi = 0; oi < orders.size(); ++oi)
        for (std::size_t ti = 0; ti < times.size(); ++ti)
            rep.norms[oi][ti] = sobolev_norm(snaps[ti], orders[oi]);
    for (const auto& series : rep.norms) {
        std::size_t from = series.size();
        // walk back while non-increasing
        if (!series.empty()) {
            from = series.size() - 1;
            while (from > 0 && series[from - 1] >= series[from] * (1.0 - 1e-12))
                --from;
        }
        rep.monotone_from.push_back(from);
    }
    return rep;
}

}  // namespace fns
