#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qnl/grid.hpp"
#include "qnl/params.hpp"
#include "qnl/potential.hpp"
#include "qnl/spectra.hpp"

namespace qnl::perturb {

/// One row of an eta or L scan.
struct ShiftScan {
    int n = 0;
    double eta = 0.0;
    double L = 0.0;
    double deltaE = 0.0;
    double exponent_fit = 0.0;  ///< NaN when no fit was run
    double c2_estimate = 0.0;   ///< NaN when no fit was run
};

/// Potential family reusable across grids (scans rebuild the grid per point).
struct PotentialFamily {
    std::optional<double> harmonic_omega;       ///< set => use the analytic SHO states
    std::function<double(double)> v;            ///< V(x), used when tabulating
    double halfwidth = 8.0;                     ///< domain the bound states need
};

PotentialFamily harmonic_family(const ModelParams& params, int max_n);

/// Smooth anharmonic well V = strength * x^4; the shift universality holds
/// for smooth potentials, whose eigenstate zeros are all interior nodes.
PotentialFamily quartic_well_family(double strength, int max_n);

/// Grid construction knobs for scans.
struct GridPolicy {
    double cells_per_shift = 40.0;  ///< dx = eta*L / cells_per_shift (spec floor is 20)
    std::optional<double> halfwidth;
    Boundary boundary = Boundary::PaddedFloor;
};

/// Universal eta shape of the nodal first-order shift,
/// S(eta) = sqrt(eta (1-eta)) (1 - 4 eta); requires 0 < eta < 1.
double eta_shape_factor(double eta);

/// Golden-section minimum of S on (0,1); agrees with the stationary point
/// (7 + sqrt(33))/16 to 1e-8.
double eta_minimizer_perturbative();

/// First-order shift deltaE = int p_n F1[p_n] dx for the unperturbed state of
/// V on this grid (integrand zeroed where p < density floor).  Refuses grids
/// with dx > eta*L/20.
double first_order_shift(int n, const ModelParams& params, const Grid1D& grid,
                         const PotentialSpec& V);

/// Same, for a prebuilt unperturbed state.
double first_order_shift(const spectra::EigenPair& state, const ModelParams& params);

struct EtaScanResult {
    std::vector<ShiftScan> rows;
    double argmin_eta = 0.0;                      ///< parabola-refined scan minimum
    std::optional<std::pair<double, double>> sign_change;  ///< bracket of the deltaE zero
};

EtaScanResult eta_scan(int n, double L, const std::vector<double>& etas,
                       const PotentialFamily& family, const ModelParams& base,
                       const GridPolicy& policy = {});

struct C2Fit {
    bool ok = false;
    std::string message;
    double exponent = 0.0;   ///< log-log slope of |deltaE| vs L
    double c2 = 0.0;         ///< slope of deltaE vs (hbar^2 pi/6m) S(eta) |L|
    double r2 = 0.0;
    std::vector<ShiftScan> rows;
};

/// Extract sum_p C_np^2 from the linear-in-|L| window.  Refuses node-free
/// states (fitted exponent near 2) and poor fits (R^2 < 0.99).
C2Fit extract_C2(int n, double eta, const std::vector<double>& L_list,
                 const PotentialFamily& family, const ModelParams& base,
                 const GridPolicy& policy = {});

}  // namespace qnl::perturb
