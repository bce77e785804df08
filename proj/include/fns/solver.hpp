#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fns/field.hpp"
#include "fns/metrics.hpp"

namespace fns {

// ---------------------------------------------------------------------------
// phi functions: phi_k(z) = sum_{j>=0} z^j / (j+k)!,  phi_0 = exp.
// Series below |z| = 1, forward recurrence phi_{k+1} = (phi_k - 1/k!)/z above
// (stable for the z <= 0 arguments used here; division by large |z| damps).
double phi_fn(int k, double z);

// ---------------------------------------------------------------------------
// Initial data.

enum class InitialKind { shear, taylor_green, gevrey_random, file };

InitialKind parse_initial_kind(const std::string& s);
std::string to_string(InitialKind k);

struct InitialSpec {
    InitialKind kind = InitialKind::taylor_green;
    double amplitude = 1.0;
    double gevrey_radius = 0.5;  // gevrey_random only
    std::uint64_t seed = 1;      // gevrey_random only
    std::string path;            // file only
};

// Divergence-free mean-zero initial field on a d=2 grid (shear/taylor_green)
// or any d (gevrey_random: coefficients A exp(-r0 |k|) with seeded
// Hermitian-symmetric unit-modulus phases, Leray-projected, dealiased).
SpectralField init_field(const TorusGrid& g, const InitialSpec& spec);

// Closed-form solutions of the full nonlinear system on T^2:
//   shear:        (A exp(-t) sin x2, 0)            (|k| = 1 modes)
//   taylor_green: A exp(-2^{gamma/2} t) (sin x1 cos x2, -cos x1 sin x2)
// For these the advective term is a pure gradient, removed by the projection.
SpectralField exact_solution(InitialKind kind, const TorusGrid& g, double gamma,
                             double amplitude, double t);

// ---------------------------------------------------------------------------
// Time stepping.

enum class Method { exp_euler, etd2, picard };

Method parse_method(const std::string& s);
std::string to_string(Method m);

// Per-mode coefficient tables for the exponential integrators:
//   E = exp(-dt lam), phi1dt = dt phi_1(-dt lam), phi2dt = dt phi_2(-dt lam),
// lam = |k|^gamma. Build once per (grid, gamma, dt).
struct EtdTables {
    TorusGrid grid;
    double gamma = 0, dt = 0;
    std::vector<double> E, phi1dt, phi2dt;
};

EtdTables build_etd_tables(const TorusGrid& g, double gamma, double dt);

// Exponential Euler: u+ = E u - phi1dt N(u).
void step_exp_euler(SpectralField& u, const EtdTables& tab);

// ETDRK2: a = E u - phi1dt N(u); u+ = a - phi2dt (N(a) - N(u)).
void step_etd2(SpectralField& u, const EtdTables& tab);

// Convenience single-step entry point (builds tables; fine for tests).
void step_exponential(SpectralField& u, double gamma, double dt, Method m);

// ---------------------------------------------------------------------------
// Picard iteration on one slab [t, t+dt].
//
// M collocation nodes tau_j = j dt/(M-1) (endpoints included). The Duhamel
// fixed point is iterated with the nonlinearity interpolated by the global
// Lagrange polynomial through the nodes; the memory integrals
//   int_0^{tau_j} exp(-lam (tau_j - s)) l_i(s) ds
// are evaluated exactly per mode via the monomial expansion of l_i and the
// phi functions, so the only approximation is polynomial interpolation of
// N(u(s)) in time.

struct PicardDiag {
    int iterations = 0;
    bool converged = false;
    std::vector<double> update_norms;        // sqrt-energy of iterate updates
    std::vector<double> contraction_factors; // successive update-norm ratios
};

struct PicardError : std::runtime_error {
    PicardDiag diag;
    PicardError(const std::string& msg, PicardDiag d)
        : std::runtime_error(msg), diag(std::move(d)) {}
};

struct PicardTables {
    TorusGrid grid;
    double gamma = 0, dt = 0;
    int nodes = 0;
    std::vector<std::vector<double>> E;  // [node][mode] exp(-lam tau_j)
    std::vector<std::vector<double>> W;  // [node*M + i][mode] memory weights
};

PicardTables build_picard_tables(const TorusGrid& g, double gamma, double dt,
                                 int nodes);

// Advances u across one slab. Convergence: max-over-nodes update sqrt-energy
// <= tol * (initial sqrt-energy scale, with an absolute floor). Throws
// PicardError carrying the contraction history on non-convergence.
PicardDiag picard_slab(SpectralField& u, const PicardTables& tab, double tol,
                       int max_iter);

// ---------------------------------------------------------------------------
// Simulation driver.

struct SolverConfig {
    double gamma = 1.5;
    int dim = 2;
    int n = 64;
    double t_end = 1.0;
    double dt = 1e-3;  // slab width for picard
    Method method = Method::etd2;
    double picard_tol = 1e-10;
    int picard_max_iter = 12;
    int picard_nodes = 4;
    InitialSpec initial;
    int output_every = 1;     // record cadence in steps
    int snapshot_every = 0;   // 0 = keep no snapshots (t=0 and t_end kept if >0)
    std::vector<double> q_list;  // extra Lebesgue exponents; may include inf

    void validate() const;  // throws std::invalid_argument with the violated rule
};

struct SimulationError : std::runtime_error {
    double last_valid_time = 0;
    SimulationError(const std::string& msg, double t)
        : std::runtime_error(msg), last_valid_time(t) {}
};

struct TrajectoryRecord {
    SolverConfig config;
    std::vector<double> times;
    std::vector<double> energy_series;        // ||u||_2^2 (Parseval)
    std::vector<double> dissipation_series;   // ||Lambda^{gamma/2} u||_2^2
    std::vector<double> dissipation_integral; // trapezoid of the above over [0,t]
    std::vector<double> qs;                   // norm columns: 2, q_list..., inf
    std::vector<std::vector<double>> norms;   // [q index][record index]
    RadiusTrace radius_trace;
    std::vector<std::vector<double>> shell_spectra;  // [record index][shell]
    std::vector<double> snapshot_times;
    std::vector<SpectralField> snapshots;
    std::vector<PicardDiag> slab_diags;       // picard method only

    // Column of ||u||_{L^q}; q must be present in qs.
    const std::vector<double>& norm_series(double q) const;
};

// Integrates the dealiased Galerkin system to t_end. Records norms, energy,
// dissipation and an analyticity-radius estimate every output_every steps
// (plus t = 0). Aborts with SimulationError on NaN/overflow or when energy
// exceeds 1e6 x initial.
TrajectoryRecord simulate(const SolverConfig& cfg);

// ---------------------------------------------------------------------------
// Diagnostics tied to the mild-solution framework.

// alpha = 1 - 1/gamma - d/(q gamma); the weight making t^alpha ||u||_q
// scale-invariant. q may be infinity.
double kato_alpha(double gamma, int d, double q);

using KatoReport = WeightedSupCheck;

// sup_t t^alpha ||u(t)||_q over the recorded times (t > 0). q must be
// tracked in the record and satisfy q > d/(gamma-1) (else alpha <= 0 and the
// weighted norm is not the right invariant quantity).
KatoReport kato_norm_tracker(const TrajectoryRecord& rec, double q);

// Pressure from the velocity: p_hat = -sum_{a,b} k_a k_b (u_a u_b)_hat / |k|^2
// (dealiased products), the scalar closing grad p + (I-P) div(u (x) u) = 0.
SpectralField recover_pressure(const SpectralField& u);

}  // namespace fns
