#pragma once

#include "qnl/fields.hpp"
#include "qnl/params.hpp"
#include "qnl/potential.hpp"

namespace qnl::nonlin {

/// Energy-valued field such as Q, Q_1NL or F1 = Q_1NL - Q.
struct NonlinearField {
    Grid1D grid;
    std::vector<double> values;
};

/// Magnitude cap applied where the density sits below its floor:
/// (escale/eta^4) * (|ln 1e-12| + 2).  The log divergence at nodes is
/// integrable and multiplies psi -> 0 in the evolution equation, so the
/// cap keeps fields finite without moving any quadrature at the stated
/// tolerances.
double clamp_bound(const ModelParams& params);

/// Bohm quantum potential Q = -(hbar^2/2m) (sqrt p)'' / sqrt(p),
/// central second difference on sqrt(p) floored at density_floor(p).
NonlinearField bohm_potential(const DensityField& p, const ModelParams& params);

/// Regularized nonlocal potential
///   Q_1NL = (escale/eta^4) [ ln(p/D+) + 1 - (1-eta) p/D+ - eta p-/D- ]
/// with D+ = (1-eta) p + eta p(x+eta L), D- = (1-eta) p(x-eta L) + eta p,
/// densities floored before forming ratios.  Requires a grid built for
/// the same (eta, L).
NonlinearField q1nl(const DensityField& p, const ModelParams& params);

/// F1 = Q_1NL - Q, the nonlinear potential entering the evolution equation.
NonlinearField f1(const DensityField& p, const ModelParams& params);

/// Fisher information energy (hbar^2/8m) int p'^2/p dx, evaluated through
/// its node-safe form: the discrete Dirichlet energy (hbar^2/2m) sum
/// (d sqrt(p))^2 / dx, which equals the spec integrand wherever p > 0 and
/// stays finite through nodes.
double fisher_energy(const DensityField& p, const ModelParams& params);

/// Regularized Kullback-Leibler energy
///   U_KL = (escale/eta^4) int p ln[ p / ((1-eta) p + eta p(x+eta L)) ] dx,
/// integrand zero where p < density_floor(p).  Its discrete functional
/// derivative is exactly the q1nl stencil, and on periodic grids the sum
/// satisfies U_KL == sum p*Q_1NL dx identically.
double kl_energy(const DensityField& p, const ModelParams& params);

/// Total energy E[psi] = <psi|T + V|psi> + U_KL[p] - I_F[p] with
/// T the discrete Dirichlet kinetic form; for real nodeless psi the kinetic
/// term coincides with I_F so E reduces to <V> + U_KL.
double total_energy(const WaveField& psi, const PotentialSpec& V, const ModelParams& params);

enum class Functional { Fisher, KL };

/// Central finite-difference probe of the functional derivative at one cell:
/// compares [F(p + h delta_i/dx) - F(p - h delta_i/dx)]/(2h) against the
/// corresponding field (Q for Fisher, Q_1NL for KL).  Returns
/// |fd - field| / max(1, |field|); returns +inf if the probe would cross
/// the density floor (clamped region).  Periodic grids only.
double functional_derivative_check(Functional f, const DensityField& p,
                                   std::size_t probe_index, double h,
                                   const ModelParams& params);

}  // namespace qnl::nonlin
