#pragma once

#include "fns/field.hpp"

namespace fns {

// Multiplies every mode by exp(-t |k|^gamma). Pre: gamma in (0,2], t >= 0.
void apply_semigroup(SpectralField& u, double gamma, double t);

// Riesz derivative Lambda^alpha: multiplier |k|^alpha. alpha == 0 is the
// identity; otherwise the k = 0 mode is zeroed (homogeneous symbol).
// Pre: alpha > -d (else the symbol is not locally integrable).
void fractional_derivative(SpectralField& u, double alpha);

// d^k/dx_axis^k: multiplier (i k_axis)^k. The Nyquist plane of the
// differentiated axis is zeroed: the odd multiplier has no Hermitian partner
// at k = -n/2, and keeping it would make derivatives of real fields complex.
void partial_derivative(SpectralField& u, int axis, int k);

// Leray projection P = I - k k^T / |k|^2 per mode (k = 0 untouched).
// Idempotent; annihilates gradient fields. Requires comps == dim.
void leray_project(SpectralField& u);

// 2/3-rule truncation: zero every mode with any |k_axis| >= n/3 + 1,
// and all Nyquist planes.
void dealias_truncate(SpectralField& u);

// Dealiased advective term P grad.(u (x) u), computed pseudo-spectrally:
// truncate, transform, form the d(d+1)/2 products, transform back, assemble
// i sum_j k_j w_ij, truncate again, project. Input must be divergence-free
// and mean-zero; the result is both. The +P grad.(u(x)u) sign is returned
// (time steppers subtract it).
SpectralField nonlinear_term(const SpectralField& u);

// L^p norm of |u(x)| (pointwise Euclidean magnitude over components) on
// [0,2pi)^d by the trapezoid == rectangle rule on the periodic grid.
// p >= 1 or infinity.
double lp_norm(const SpectralField& u, double p);
double lp_norm(const PhysicalField& u, double p);

// ||u||_2^2 via Parseval: (2pi)^d sum_k |u_hat(k)|^2 (all components).
double energy(const SpectralField& u);

// ||Lambda^{gamma/2} u||_2^2 via Parseval -- the instantaneous dissipation.
double dissipation(const SpectralField& u, double gamma);

// H^s norm: sqrt((2pi)^d sum_k (1+|k|^2)^s |u_hat(k)|^2).
double sobolev_norm(const SpectralField& u, double s);

}  // namespace fns
