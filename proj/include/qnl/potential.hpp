#pragma once

#include <variant>
#include <vector>

#include "qnl/grid.hpp"
#include "qnl/params.hpp"

namespace qnl {

/// Harmonic well V(x) = (1/2) m omega^2 x^2, minimum V(0) = 0.
struct Harmonic {
    double omega = 1.0;
};

/// Potential tabulated on the grid it will be used with.
struct Tabulated {
    std::vector<double> values;
};

using PotentialSpec = std::variant<Harmonic, Tabulated>;

/// Sample V on the grid.  Tabulated potentials must match the grid length.
std::vector<double> potential_values(const PotentialSpec& V, const Grid1D& g,
                                     const ModelParams& params);

bool is_harmonic(const PotentialSpec& V);

}  // namespace qnl
