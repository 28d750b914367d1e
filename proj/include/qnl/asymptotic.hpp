#pragma once

#include "qnl/params.hpp"

namespace qnl::asymptotic {

/// Large-L collapse energy at one eta.
struct CollapseResult {
    double eta = 0.0;
    double g_value = 0.0;  ///< g(eta) = -ln(1-eta)/eta^4
    double energy = 0.0;   ///< g(eta) * escale
};

/// E = -(escale/eta^4) ln(1-eta); requires 0 < eta < 1 (eta = 1 diverges).
CollapseResult collapse_energy(double eta, const ModelParams& params);

/// Universal minimizer of g: golden-section minimum cross-checked against the
/// stationarity root of eta/(1-eta) + 4 ln(1-eta) = 0; the two must agree to
/// 1e-6.  Near 0.9034.
double eta_minimizer_asymptotic();

}  // namespace qnl::asymptotic
