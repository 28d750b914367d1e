#pragma once

#include <vector>

#include "qnl/params.hpp"

namespace qnl::variational {

/// One minimized point of the (eta, eps) sweep.
struct VariationalPoint {
    int n = 0;
    double eta = 0.0;
    double eps = 0.0;     ///< L/a
    double c_star = 0.0;  ///< optimal width, c_star at the search floor means collapse
    double e_star = 0.0;  ///< minimized energy in hbar*omega units
    int restarts_used = 0;
    bool converged = false;
};

inline constexpr double kCFloor = 1e-3;
inline constexpr double kCCeil = 10.0;

/// Trial energy of the width-c SHO state under the harmonic well:
/// E(c) = <V> + U_KL[p_c].  For these real trial states the kinetic term
/// cancels the Fisher term identically, so this is the full energy
/// functional; <V> equals (n+1/2) c^2/2 up to quadrature dust.
/// The grid is rebuilt per c (dx tracks the state width, shift alignment
/// preserved).
double variational_energy(int n, double c, const ModelParams& params);

/// Deterministic multistart minimum of E(c) over [kCFloor, kCCeil]:
/// 40 log-spaced seeds, golden-section refinement of the best local basins.
VariationalPoint minimize_over_c(int n, const ModelParams& params);

/// Full (eta, eps) table, sorted by (n, eta, eps); per-point failures are
/// recorded (converged = false) and the sweep continues.
std::vector<VariationalPoint> sweep(int n, const std::vector<double>& etas,
                                    const std::vector<double>& eps_list,
                                    const ModelParams& base, int threads = 1);

}  // namespace qnl::variational
