#pragma once

#include <vector>

#include "qnl/fields.hpp"
#include "qnl/params.hpp"
#include "qnl/potential.hpp"

namespace qnl::spectra {

/// Unperturbed linear eigenstate: real-valued, grid-normalized, node count
/// equals the index.
struct EigenPair {
    int n = 0;
    double energy = 0.0;
    WaveField psi;
};

/// Hermite-function stationary state with length scale b = width_c * a,
/// built by the stable normalized three-term recurrence.  The stored energy
/// is the linear SHO value (n + 1/2) hbar omega regardless of width_c.
/// Throws if the grid is too narrow to hold the state
/// (|psi| at the boundary > 1e-8).
EigenPair sho_eigenstate(int n, double width_c, const Grid1D& grid, const ModelParams& params);

/// Lowest-k eigenpairs of the standard 3-point finite-difference Hamiltonian
/// with Dirichlet walls (PaddedFloor grids only), via Sturm-sequence bisection
/// plus shifted inverse iteration.  States are grid-normalized with a positive
/// leading lobe.  Throws on non-convergence, reporting the residual norm.
std::vector<EigenPair> linear_eigensolve(const PotentialSpec& V, const Grid1D& grid,
                                         const ModelParams& params, std::size_t k);

/// Sign changes of the real part, ignoring samples below 1e-8 * max|psi|.
int count_nodes(const WaveField& psi);

}  // namespace qnl::spectra
