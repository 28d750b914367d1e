#pragma once

#include <cstddef>

namespace qnl {

enum class Boundary {
    Periodic,     ///< indices wrap around
    PaddedFloor,  ///< density reads outside the window return the floor value
};

/// Uniform 1D grid aligned with the nonlocal shift.
///
/// The spacing is chosen so the shift distance eta*L is a whole number of
/// cells: shift_cells * dx reproduces shift_len to within one ulp, and
/// shift_len stores the requested eta*L bit for bit.  Every nonlocal
/// operation moves data by whole cells, never by interpolation, so shifted
/// samples line up with grid samples exactly.
struct Grid1D {
    double x_min = 0.0;
    double dx = 1.0;
    std::size_t count = 0;
    std::size_t shift_cells = 1;
    double shift_len = 1.0;  ///< authoritative eta*L this grid was built for
    Boundary boundary = Boundary::PaddedFloor;

    double x(std::size_t i) const { return x_min + dx * static_cast<double>(i); }
    double length() const { return dx * static_cast<double>(count); }
    double shift_length() const { return shift_len; }

    bool operator==(const Grid1D&) const = default;
};

/// Build a shift-aligned grid covering [-domain_halfwidth, +domain_halfwidth].
///
/// shift_cells = round(eta*L/target_dx) clamped to >= 1, dx = eta*L/shift_cells,
/// count even with count*dx >= 2*domain_halfwidth and count > 4*shift_cells
/// (grown if needed), x = 0 always on the grid.  Throws if the domain is
/// smaller than one shift or the cell count would be absurd.
Grid1D make_grid(double domain_halfwidth, double eta, double L, double target_dx,
                 Boundary boundary);

}  // namespace qnl
