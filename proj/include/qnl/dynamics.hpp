#pragma once

#include <vector>

#include "qnl/fields.hpp"
#include "qnl/params.hpp"
#include "qnl/potential.hpp"

namespace qnl::dynamics {

struct StepRecord {
    int step = 0;
    double t = 0.0;
    double norm = 0.0;
    double energy = 0.0;
    double centroid = 0.0;
    double width = 0.0;
};

struct EvolutionDiagnostics {
    std::vector<StepRecord> records;
};

struct EvolveResult {
    WaveField psi;
    EvolutionDiagnostics diagnostics;
};

/// Real-time Strang split-step evolution on a periodic grid: spectral kinetic
/// half-step, full phase step exp(-i (V + F1[p]) dt/hbar) with F1 recomputed
/// from the current density, kinetic half-step.  The nonlinearity is a real
/// phase, so the norm is conserved to machine precision.  Aborts when
/// dt * max|V + F1|/hbar >= 0.5, reporting the offending bound.
EvolveResult evolve(const WaveField& psi0, const PotentialSpec& V, const ModelParams& params,
                    double dt, int steps, int record_stride = 1);

struct RelaxResult {
    WaveField psi;
    double energy = 0.0;
    int steps = 0;
    bool converged = false;
    bool oscillation = false;  ///< energy rose over 10 consecutive steps
    double residual = 0.0;     ///< ||(H_lin + F1) psi - E psi||
};

/// Imaginary-time relaxation to the nonlinear ground state on a periodic
/// grid, from a width-a Gaussian guess, iterated until |E_k - E_{k-1}| < tol;
/// converged also requires the discrete eigen-residual below 100*tol.
RelaxResult relax_ground_state(const PotentialSpec& V, const ModelParams& params,
                               const Grid1D& grid, double dtau, double tol,
                               int max_steps = 200000);

}  // namespace qnl::dynamics
