#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qnl/grid.hpp"

namespace qnl {

/// Nonnegative probability density sampled on a grid.
struct DensityField {
    Grid1D grid;
    std::vector<double> values;
};

/// Complex wavefunction sampled on a grid.
struct WaveField {
    Grid1D grid;
    std::vector<std::complex<double>> values;
};

/// Floor below which a density sample counts as vanishing: 1e-12 * max(p).
/// A strictly positive floor keeps every log and ratio in the nonlinear
/// potential finite; decaying states only reach it deep in their tails.
double density_floor(std::span<const double> p);
double density_floor(const DensityField& p);

/// Pointwise |psi|^2.
DensityField density_of(const WaveField& psi);

/// Density sampled at x + direction*eta*L: output[i] = p(x_i + direction*shift).
/// Periodic grids wrap; PaddedFloor grids fill with density_floor(p).
DensityField shift_density(const DensityField& p, int direction);

/// Deterministic pairwise summation (fixed reduction order).
double pairwise_sum(std::span<const double> v);

/// Trapezoid quadrature honoring the grid boundary (periodic grids weight
/// every sample by dx; padded grids halve the end samples).
double integrate(const Grid1D& g, std::span<const double> f);

double wave_norm(const WaveField& psi);
void normalize(WaveField& psi);

double centroid(const DensityField& p);
double rms_width(const DensityField& p);

}  // namespace qnl
