#include "qnl/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qnl {

namespace {
constexpr std::size_t kMaxCells = 300'000'000;  // ~2.4 GB of doubles
}

Grid1D make_grid(double domain_halfwidth, double eta, double L, double target_dx,
                 Boundary boundary) {
    if (!(target_dx > 0.0))
        throw std::invalid_argument("make_grid: target_dx must be positive");
    const double shift = eta * L;
    if (!(shift > 0.0))
        throw std::invalid_argument("make_grid: eta*L must be positive");
    if (!(domain_halfwidth > 0.0))
        throw std::invalid_argument("make_grid: domain_halfwidth must be positive");
    if (2.0 * domain_halfwidth < shift)
        throw std::invalid_argument("make_grid: domain smaller than one shift eta*L");

    long long s = std::llround(shift / target_dx);
    if (s < 1) s = 1;
    if (static_cast<std::size_t>(s) > kMaxCells)
        throw std::invalid_argument("make_grid: shift_cells overflow (target_dx too small)");

    const double dx = shift / static_cast<double>(s);

    const double half_cells = std::ceil(domain_halfwidth / dx);
    if (half_cells > static_cast<double>(kMaxCells / 2))
        throw std::invalid_argument("make_grid: cell count overflow");
    std::size_t count = 2 * static_cast<std::size_t>(half_cells);
    // keep shifted samples mostly interior
    if (count <= 4 * static_cast<std::size_t>(s)) count = 4 * static_cast<std::size_t>(s) + 2;
    if (count % 2 != 0) ++count;
    if (count > kMaxCells)
        throw std::invalid_argument("make_grid: cell count overflow (" +
                                    std::to_string(count) + " cells)");

    Grid1D g;
    g.dx = dx;
    g.count = count;
    g.shift_cells = static_cast<std::size_t>(s);
    g.shift_len = shift;
    g.boundary = boundary;
    g.x_min = -dx * static_cast<double>(count / 2);
    return g;
}

}  // namespace qnl
