#include "qnl/fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnl {

double density_floor(std::span<const double> p) {
    double mx = 0.0;
    for (double v : p) mx = std::max(mx, v);
    return 1e-12 * mx;
}

double density_floor(const DensityField& p) { return density_floor(std::span(p.values)); }

DensityField density_of(const WaveField& psi) {
    DensityField p;
    p.grid = psi.grid;
    p.values.resize(psi.values.size());
    for (std::size_t i = 0; i < psi.values.size(); ++i) p.values[i] = std::norm(psi.values[i]);
    return p;
}

DensityField shift_density(const DensityField& p, int direction) {
    if (direction != 1 && direction != -1)
        throw std::invalid_argument("shift_density: direction must be +1 or -1");
    const std::size_t n = p.values.size();
    const auto s = static_cast<std::ptrdiff_t>(p.grid.shift_cells) * direction;
    DensityField out;
    out.grid = p.grid;
    out.values.resize(n);
    if (p.grid.boundary == Boundary::Periodic) {
        for (std::size_t i = 0; i < n; ++i) {
            auto j = (static_cast<std::ptrdiff_t>(i) + s) % static_cast<std::ptrdiff_t>(n);
            if (j < 0) j += static_cast<std::ptrdiff_t>(n);
            out.values[i] = p.values[static_cast<std::size_t>(j)];
        }
    } else {
        const double floor = density_floor(p);
        for (std::size_t i = 0; i < n; ++i) {
            auto j = static_cast<std::ptrdiff_t>(i) + s;
            out.values[i] = (j < 0 || j >= static_cast<std::ptrdiff_t>(n))
                                ? floor
                                : p.values[static_cast<std::size_t>(j)];
        }
    }
    return out;
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 32) {
        double acc = 0.0;
        for (double x : v) acc += x;
        return acc;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double integrate(const Grid1D& g, std::span<const double> f) {
    if (f.empty()) return 0.0;
    double total = pairwise_sum(f);
    if (g.boundary == Boundary::PaddedFloor) total -= 0.5 * (f.front() + f.back());
    return total * g.dx;
}

double wave_norm(const WaveField& psi) {
    std::vector<double> p(psi.values.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(psi.values[i]);
    return std::sqrt(integrate(psi.grid, p));
}

void normalize(WaveField& psi) {
    const double n = wave_norm(psi);
    if (!(n > 0.0)) throw std::domain_error("normalize: zero-norm wavefunction");
    const double inv = 1.0 / n;
    for (auto& v : psi.values) v *= inv;
}

double centroid(const DensityField& p) {
    std::vector<double> xp(p.values.size());
    for (std::size_t i = 0; i < xp.size(); ++i) xp[i] = p.grid.x(i) * p.values[i];
    const double norm = integrate(p.grid, p.values);
    return integrate(p.grid, xp) / norm;
}

double rms_width(const DensityField& p) {
    const double mu = centroid(p);
    std::vector<double> x2p(p.values.size());
    for (std::size_t i = 0; i < x2p.size(); ++i) {
        const double d = p.grid.x(i) - mu;
        x2p[i] = d * d * p.values[i];
    }
    const double norm = integrate(p.grid, p.values);
    return std::sqrt(std::max(0.0, integrate(p.grid, x2p) / norm));
}

}  // namespace qnl
