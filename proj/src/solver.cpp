#include "fns/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "fns/fft.hpp"
#include "fns/operators.hpp"
#include "fns/snapshot.hpp"

namespace fns {

// ---------------------------------------------------------------------------
// phi functions.

double phi_fn(int k, double z) {
    if (k < 0) throw std::invalid_argument("phi_fn: k must be >= 0");
    if (k == 0) return std::exp(z);
    if (std::abs(z) < 1.0) {
        // Taylor series; the closed forms (exp(z)-1)/z etc. cancel here.
        double fact = 1.0;
        for (int j = 1; j <= k; ++j) fact *= j;
        double term = 1.0 / fact, sum = term;
        for (int j = 1; j < 40; ++j) {
            term *= z / double(k + j);
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    // phi_{j+1}(z) = (phi_j(z) - 1/j!) / z; stable for the large |z| used here.
    double val = std::exp(z), fact = 1.0;
    for (int j = 1; j <= k; ++j) {
        val = (val - 1.0 / fact) / z;
        fact *= j;
    }
    return val;
}

// ---------------------------------------------------------------------------
// Enums.

InitialKind parse_initial_kind(const std::string& s) {
    if (s == "shear") return InitialKind::shear;
    if (s == "taylor_green") return InitialKind::taylor_green;
    if (s == "gevrey_random") return InitialKind::gevrey_random;
    if (s == "file") return InitialKind::file;
    throw std::invalid_argument("unknown initial kind: " + s);
}

std::string to_string(InitialKind k) {
    switch (k) {
        case InitialKind::shear: return "shear";
        case InitialKind::taylor_green: return "taylor_green";
        case InitialKind::gevrey_random: return "gevrey_random";
        default: return "file";
    }
}

Method parse_method(const std::string& s) {
    if (s == "exp_euler") return Method::exp_euler;
    if (s == "etd2") return Method::etd2;
    if (s == "picard") return Method::picard;
    throw std::invalid_argument("unknown method: " + s);
}

std::string to_string(Method m) {
    switch (m) {
        case Method::exp_euler: return "exp_euler";
        case Method::etd2: return "etd2";
        default: return "picard";
    }
}

// ---------------------------------------------------------------------------
// Initial data and exact solutions.

namespace {

void set_mode(SpectralField& u, int comp, std::array<int, 3> k, cplx v) {
    u.c[comp][mode_index(u.grid, k)] = v;
}

SpectralField gevrey_random_field(const TorusGrid& g, const InitialSpec& spec) {
    if (!(spec.gevrey_radius > 0))
        throw std::invalid_argument("init_field: gevrey_radius must be > 0");
    SpectralField u = make_spectral_field(g, g.dim);
    std::mt19937_64 rng(spec.seed);
    const double r0 = spec.gevrey_radius;
    const double pref = spec.amplitude;
    const int d = g.dim;
    for (int a = 0; a < d; ++a) {
        for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
            // Canonical representative of the +-k pair: first nonzero entry > 0.
            int lead = 0;
            for (int b = 0; b < d; ++b) {
                if (k[b] != 0) {
                    lead = k[b];
                    break;
                }
            }
            if (lead <= 0) return;  // partner (or the zero mode)
            for (int b = 0; b < d; ++b)
                if (g.is_nyquist(k[b])) return;  // no Hermitian partner; dropped

            const double theta =
                kTwoPi * (double(rng() >> 11) * 0x1.0p-53);  // seeded phase
            double k2 = 0.0;
            for (int b = 0; b < d; ++b) k2 += double(k[b]) * double(k[b]);
            const cplx v = pref * std::exp(-r0 * std::sqrt(k2)) *
                           cplx{std::cos(theta), std::sin(theta)};
            u.c[a][idx] = v;
            std::array<int, 3> mk{-k[0], -k[1], -k[2]};
            u.c[a][mode_index(g, mk)] = std::conj(v);
        });
    }
    dealias_truncate(u);
    leray_project(u);
    u.mean_zero = true;
    u.div_free = true;
    return u;
}

}  // namespace

SpectralField exact_solution(InitialKind kind, const TorusGrid& g, double gamma,
                             double amplitude, double t) {
    if (g.dim != 2)
        throw std::invalid_argument("exact_solution: closed forms live on T^2");
    SpectralField u = make_spectral_field(g, 2);
    const double A = amplitude;
    if (kind == InitialKind::shear) {
        const double dec = std::exp(-t);  // |k| = 1 for any gamma
        set_mode(u, 0, {0, 1, 0}, cplx{0.0, -0.5 * A * dec});
        set_mode(u, 0, {0, -1, 0}, cplx{0.0, 0.5 * A * dec});
    } else if (kind == InitialKind::taylor_green) {
        const double dec = A * std::exp(-std::pow(2.0, gamma / 2.0) * t);
        const cplx q{0.0, 0.25 * dec};
        // (sin x1 cos x2, -cos x1 sin x2)
        set_mode(u, 0, {1, 1, 0}, -q);
        set_mode(u, 0, {1, -1, 0}, -q);
        set_mode(u, 0, {-1, 1, 0}, q);
        set_mode(u, 0, {-1, -1, 0}, q);
        set_mode(u, 1, {1, 1, 0}, q);
        set_mode(u, 1, {1, -1, 0}, -q);
        set_mode(u, 1, {-1, 1, 0}, q);
        set_mode(u, 1, {-1, -1, 0}, -q);
    } else {
        throw std::invalid_argument("exact_solution: only shear / taylor_green");
    }
    u.mean_zero = true;
    u.div_free = true;
    return u;
}

SpectralField init_field(const TorusGrid& g, const InitialSpec& spec) {
    switch (spec.kind) {
        case InitialKind::shear:
        case InitialKind::taylor_green:
            return exact_solution(spec.kind, g, 2.0, spec.amplitude, 0.0);
        case InitialKind::gevrey_random:
            return gevrey_random_field(g, spec);
        case InitialKind::file: {
            SpectralField u = read_snapshot(spec.path);
            if (u.grid.dim != g.dim || u.grid.n != g.n)
                throw std::invalid_argument(
                    "init_field: snapshot grid does not match configured grid");
            return u;
        }
    }
    throw std::logic_error("init_field: unreachable");
}

// ---------------------------------------------------------------------------
// Exponential integrators.

EtdTables build_etd_tables(const TorusGrid& g, double gamma, double dt) {
    if (!(dt > 0)) throw std::invalid_argument("build_etd_tables: dt must be > 0");
    EtdTables tab;
    tab.grid = g;
    tab.gamma = gamma;
    tab.dt = dt;
    const std::int64_t m = g.total_modes();
    tab.E.resize(m);
    tab.phi1dt.resize(m);
    tab.phi2dt.resize(m);
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
        double k2 = 0.0;
        for (int a = 0; a < g.dim; ++a) k2 += double(k[a]) * double(k[a]);
        const double lam = std::pow(std::sqrt(k2), gamma);
        const double z = -lam * dt;
        tab.E[idx] = std::exp(z);
        tab.phi1dt[idx] = dt * phi_fn(1, z);
        tab.phi2dt[idx] = dt * phi_fn(2, z);
    });
    return tab;
}

void step_exp_euler(SpectralField& u, const EtdTables& tab) {
    SpectralField N = nonlinear_term(u);
    const std::int64_t m = u.grid.total_modes();
    for (int a = 0; a < u.comps(); ++a)
        for (std::int64_t i = 0; i < m; ++i)
            u.c[a][i] = tab.E[i] * u.c[a][i] - tab.phi1dt[i] * N.c[a][i];
}

void step_etd2(SpectralField& u, const EtdTables& tab) {
    SpectralField N1 = nonlinear_term(u);
    const std::int64_t m = u.grid.total_modes();
    SpectralField a = u;
    for (int c = 0; c < u.comps(); ++c)
        for (std::int64_t i = 0; i < m; ++i)
            a.c[c][i] = tab.E[i] * u.c[c][i] - tab.phi1dt[i] * N1.c[c][i];
    SpectralField N2 = nonlinear_term(a);
    for (int c = 0; c < u.comps(); ++c)
        for (std::int64_t i = 0; i < m; ++i)
            u.c[c][i] = a.c[c][i] - tab.phi2dt[i] * (N2.c[c][i] - N1.c[c][i]);
}

void step_exponential(SpectralField& u, double gamma, double dt, Method m) {
    const EtdTables tab = build_etd_tables(u.grid, gamma, dt);
    if (m == Method::exp_euler)
        step_exp_euler(u, tab);
    else if (m == Method::etd2)
        step_etd2(u, tab);
    else
        throw std::invalid_argument("step_exponential: use picard_slab for picard");
}

// ---------------------------------------------------------------------------
// Picard slabs.

namespace {

// Monomial coefficients of the Lagrange basis on nodes sigma_j = j/(M-1):
// returns C with l_i(sigma) = sum_m C[i][m] sigma^m. Plain Gaussian
// elimination; M <= 8 and the Vandermonde is tiny.
std::vector<std::vector<double>> lagrange_monomials(int M) {
    std::vector<std::vector<double>> A(M, std::vector<double>(2 * M, 0.0));
    for (int j = 0; j < M; ++j) {
        const double s = double(j) / double(M - 1);
        double p = 1.0;
        for (int m = 0; m < M; ++m) {
            A[j][m] = p;
            p *= s;
        }
        A[j][M + j] = 1.0;  // augment with I
    }
    for (int col = 0; col < M; ++col) {
        int piv = col;
        for (int r = col + 1; r < M; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        const double diag = A[col][col];
        for (int c = col; c < 2 * M; ++c) A[col][c] /= diag;
        for (int r = 0; r < M; ++r) {
            if (r == col) continue;
            const double f = A[r][col];
            if (f == 0.0) continue;
            for (int c = col; c < 2 * M; ++c) A[r][c] -= f * A[col][c];
        }
    }
    // A^{-1} column i gives the monomial coefficients of l_i.
    std::vector<std::vector<double>> C(M, std::vector<double>(M, 0.0));
    for (int i = 0; i < M; ++i)
        for (int m = 0; m < M; ++m) C[i][m] = A[m][M + i];
    return C;
}

double diff_sqrt_energy(const SpectralField& a, const SpectralField& b) {
    double s = 0.0;
    for (int c = 0; c < a.comps(); ++c)
        for (std::size_t i = 0; i < a.c[c].size(); ++i)
            s += std::norm(a.c[c][i] - b.c[c][i]);
    double vol = 1.0;
    for (int d = 0; d < a.grid.dim; ++d) vol *= kTwoPi;
    return std::sqrt(vol * s);
}

}  // namespace

PicardTables build_picard_tables(const TorusGrid& g, double gamma, double dt,
                                 int nodes) {
    if (nodes < 2 || nodes > 8)
        throw std::invalid_argument("build_picard_tables: nodes must be in [2,8]");
    if (!(dt > 0)) throw std::invalid_argument("build_picard_tables: dt must be > 0");
    const int M = nodes;
    PicardTables tab;
    tab.grid = g;
    tab.gamma = gamma;
    tab.dt = dt;
    tab.nodes = M;
    const std::int64_t nm = g.total_modes();
    tab.E.assign(M, std::vector<double>(nm, 0.0));
    tab.W.assign(static_cast<std::size_t>(M) * M, std::vector<double>(nm, 0.0));
    const auto C = lagrange_monomials(M);
    std::vector<double> fact(M + 1, 1.0);
    for (int m = 1; m <= M; ++m) fact[m] = fact[m - 1] * m;

    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
        double k2 = 0.0;
        for (int a = 0; a < g.dim; ++a) k2 += double(k[a]) * double(k[a]);
        const double lam = std::pow(std::sqrt(k2), gamma);
        for (int j = 0; j < M; ++j) {
            const double tau = dt * double(j) / double(M - 1);
            tab.E[j][idx] = std::exp(-lam * tau);
            if (j == 0) continue;  // all memory weights vanish at tau = 0
            // phi_{m+1}(-lam tau) for each monomial order
            double phis[9];
            for (int m = 0; m < M; ++m) phis[m] = phi_fn(m + 1, -lam * tau);
            const double ratio = tau / dt;
            for (int i = 0; i < M; ++i) {
                double w = 0.0, rp = 1.0;  // rp = ratio^m
                for (int m = 0; m < M; ++m) {
                    w += C[i][m] * rp * tau * fact[m] * phis[m];
                    rp *= ratio;
                }
                tab.W[static_cast<std::size_t>(j) * M + i][idx] = w;
            }
        }
    });
    return tab;
}

PicardDiag picard_slab(SpectralField& u, const PicardTables& tab, double tol,
                       int max_iter) {
    if (!(tol > 0)) throw std::invalid_argument("picard_slab: tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("picard_slab: max_iter must be >= 1");
    const int M = tab.nodes;
    const int d = u.grid.dim;
    const std::int64_t nm = u.grid.total_modes();

    const double scale = std::sqrt(energy(u));
    const double thresh = tol * std::max(scale, 1e-30);

    // Initial iterate: pure semigroup flow to each node.
    std::vector<SpectralField> U(M, u);
    for (int j = 1; j < M; ++j)
        for (int a = 0; a < d; ++a)
            for (std::int64_t i = 0; i < nm; ++i) U[j].c[a][i] *= tab.E[j][i];

    PicardDiag diag;
    SpectralField cand = u;
    std::vector<SpectralField> N(M, u);
    for (int it = 1; it <= max_iter; ++it) {
        for (int i = 0; i < M; ++i) N[i] = nonlinear_term(U[i]);
        double delta = 0.0;
        for (int j = 1; j < M; ++j) {
            for (int a = 0; a < d; ++a) {
                for (std::int64_t i = 0; i < nm; ++i) {
                    cplx acc = tab.E[j][i] * u.c[a][i];
                    for (int l = 0; l < M; ++l)
                        acc -= tab.W[static_cast<std::size_t>(j) * M + l][i] *
                               N[l].c[a][i];
                    cand.c[a][i] = acc;
                }
            }
            delta = std::max(delta, diff_sqrt_energy(cand, U[j]));
            U[j].c = cand.c;
        }
        diag.iterations = it;
        diag.update_norms.push_back(delta);
        if (it >= 2 && diag.update_norms[it - 2] > 0.0)
            diag.contraction_factors.push_back(delta / diag.update_norms[it - 2]);
        if (delta <= thresh) {
            diag.converged = true;
            break;
        }
    }
    if (!diag.converged) {
        std::ostringstream msg;
        msg << "picard_slab: no convergence in " << max_iter
            << " iterations (update norms:";
        for (double v : diag.update_norms) msg << " " << v;
        msg << ")";
        throw PicardError(msg.str(), diag);
    }
    u = U[M - 1];
    u.mean_zero = true;
    u.div_free = true;
    return diag;
}

// ---------------------------------------------------------------------------
// Simulation driver.

void SolverConfig::validate() const {
    if (!(gamma > 1.0 && gamma <= 2.0))
        throw std::invalid_argument("config: gamma must be in (1, 2]");
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("config: dim must be 2 or 3 (Leray projection is trivial in 1d)");
    make_grid(dim, n);
    if (!(t_end > 0)) throw std::invalid_argument("config: t_end must be > 0");
    if (!(dt > 0) || dt > t_end)
        throw std::invalid_argument("config: need 0 < dt <= t_end");
    const double steps = t_end / dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
        throw std::invalid_argument("config: t_end must be an integer multiple of dt");
    if (output_every < 1) throw std::invalid_argument("config: output_every must be >= 1");
    if (snapshot_every < 0)
        throw std::invalid_argument("config: snapshot_every must be >= 0");
    if (!(picard_tol > 0)) throw std::invalid_argument("config: picard_tol must be > 0");
    if (picard_max_iter < 1)
        throw std::invalid_argument("config: picard_max_iter must be >= 1");
    if (picard_nodes < 2 || picard_nodes > 8)
        throw std::invalid_argument("config: picard_nodes must be in [2,8]");
    if (!(initial.amplitude >= 0))
        throw std::invalid_argument("config: amplitude must be >= 0");
    if ((initial.kind == InitialKind::shear ||
         initial.kind == InitialKind::taylor_green) &&
        dim != 2)
        throw std::invalid_argument("config: shear/taylor_green require dim == 2");
    if (initial.kind == InitialKind::file && initial.path.empty())
        throw std::invalid_argument("config: initial kind 'file' needs a path");
    const double qmin = dim / (gamma - 1.0);
    for (double q : q_list) {
        if (std::isinf(q)) continue;
        if (!(q > qmin)) {
            std::ostringstream msg;
            msg << "config: q = " << q << " violates q > d/(gamma-1) = " << qmin
                << " (the weighted norm exponent alpha would not be positive)";
            throw std::invalid_argument(msg.str());
        }
    }
}

const std::vector<double>& TrajectoryRecord::norm_series(double q) const {
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (std::isinf(q) && std::isinf(qs[i])) return norms[i];
        if (qs[i] == q) return norms[i];
    }
    throw std::invalid_argument("norm_series: q not tracked in this record");
}

TrajectoryRecord simulate(const SolverConfig& cfg) {
    cfg.validate();
    const TorusGrid g = make_grid(cfg.dim, cfg.n);
    SpectralField u = init_field(g, cfg.initial);
    dealias_truncate(u);  // integrate the Galerkin-truncated system throughout

    TrajectoryRecord rec;
    rec.config = cfg;
    rec.qs.push_back(2.0);
    for (double q : cfg.q_list) {
        bool dup = false;
        for (double have : rec.qs)
            dup = dup || have == q || (std::isinf(have) && std::isinf(q));
        if (!dup) rec.qs.push_back(q);
    }
    bool have_inf = false;
    for (double have : rec.qs) have_inf = have_inf || std::isinf(have);
    if (!have_inf) rec.qs.push_back(std::numeric_limits<double>::infinity());
    rec.norms.assign(rec.qs.size(), {});

    const std::int64_t steps = std::llround(cfg.t_end / cfg.dt);
    const int band_lo = cfg.n / 8, band_hi = cfg.n / 3;

    double diss_prev = dissipation(u, cfg.gamma);
    double diss_integral = 0.0;
    std::int64_t rec_count = 0;

    auto record = [&](double t) {
        rec.times.push_back(t);
        rec.energy_series.push_back(energy(u));
        const double diss = dissipation(u, cfg.gamma);
        rec.dissipation_series.push_back(diss);
        rec.dissipation_integral.push_back(diss_integral);
        const PhysicalField up = to_physical(u);
        for (std::size_t qi = 0; qi < rec.qs.size(); ++qi)
            rec.norms[qi].push_back(lp_norm(up, rec.qs[qi]));
        std::vector<double> shells = shell_spectrum(u);
        rec.radius_trace.push(t, estimate_radius(shells, 1e-13, band_lo, band_hi));
        rec.shell_spectra.push_back(std::move(shells));
        const bool want_snap =
            cfg.snapshot_every > 0 &&
            (rec_count % cfg.snapshot_every == 0 || t == cfg.t_end);
        if (want_snap) {
            rec.snapshot_times.push_back(t);
            rec.snapshots.push_back(u);
        }
        ++rec_count;
    };

    record(0.0);

    EtdTables etd;
    PicardTables pic;
    if (cfg.method == Method::picard)
        pic = build_picard_tables(g, cfg.gamma, cfg.dt, cfg.picard_nodes);
    else
        etd = build_etd_tables(g, cfg.gamma, cfg.dt);

    const double e0 = rec.energy_series.front();
    double last_valid = 0.0;
    for (std::int64_t step = 1; step <= steps; ++step) {
        if (cfg.method == Method::picard)
            rec.slab_diags.push_back(picard_slab(u, pic, cfg.picard_tol,
                                                 cfg.picard_max_iter));
        else if (cfg.method == Method::etd2)
            step_etd2(u, etd);
        else
            step_exp_euler(u, etd);

        const double t = double(step) * cfg.dt;
        const double e = energy(u);
        if (!std::isfinite(e)) {
            std::ostringstream msg;
            msg << "simulate: NaN/overflow at t = " << t
                << "; last valid time t = " << last_valid;
            throw SimulationError(msg.str(), last_valid);
        }
        if (e0 > 0 && e > 1e6 * e0) {
            std::ostringstream msg;
            msg << "simulate: energy exceeded 1e6 x initial at t = " << t;
            throw SimulationError(msg.str(), last_valid);
        }
        last_valid = t;
        const double diss = dissipation(u, cfg.gamma);
        diss_integral += 0.5 * cfg.dt * (diss_prev + diss);
        diss_prev = diss;
        if (step % cfg.output_every == 0 || step == steps) record(t);
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Mild-solution diagnostics.

double kato_alpha(double gamma, int d, double q) {
    return 1.0 - 1.0 / gamma - (std::isinf(q) ? 0.0 : d / (q * gamma));
}

KatoReport kato_norm_tracker(const TrajectoryRecord& rec, double q) {
    const double gamma = rec.config.gamma;
    const int d = rec.config.dim;
    if (!std::isinf(q) && !(q > d / (gamma - 1.0))) {
        std::ostringstream msg;
        msg << "kato_norm_tracker: q = " << q << " violates q > d/(gamma-1) = "
            << d / (gamma - 1.0);
        throw std::invalid_argument(msg.str());
    }
    return lq_decay_check(rec.times, rec.norm_series(q), gamma, d, q);
}

SpectralField recover_pressure(const SpectralField& u) {
    const TorusGrid& g = u.grid;
    const int d = g.dim;
    if (u.comps() != d)
        throw std::invalid_argument("recover_pressure: needs a velocity field");
    SpectralField ut = u;
    dealias_truncate(ut);
    const PhysicalField up = to_physical(ut);
    const std::int64_t m = g.total_modes();

    PhysicalField prod = make_physical_field(g, 1);
    SpectralField what[3][3];
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
            for (std::int64_t i = 0; i < m; ++i)
                prod.v[0][i] = up.v[a][i] * up.v[b][i];
            what[a][b] = to_spectral(prod);
        }

    SpectralField p = make_spectral_field(g, 1);
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& k) {
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) k2 += double(k[a]) * double(k[a]);
        if (k2 == 0.0) return;
        cplx acc{0.0, 0.0};
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                const auto& w = (a <= b) ? what[a][b] : what[b][a];
                acc += double(k[a]) * double(k[b]) * w.c[0][idx];
            }
        p.c[0][idx] = -acc / k2;
    });
    dealias_truncate(p);
    p.mean_zero = true;
    return p;
}

}  // namespace fns
