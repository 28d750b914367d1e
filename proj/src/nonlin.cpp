#include "qnl/nonlin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qnl::nonlin {

namespace {

// Floored density access with boundary handling, by cell offset.
struct FlooredDensity {
    const std::vector<double>& p;
    double floor;
    std::ptrdiff_t n;
    bool periodic;

    double at(std::ptrdiff_t i) const {
        if (periodic) {
            i %= n;
            if (i < 0) i += n;
        } else if (i < 0 || i >= n) {
            return floor;
        }
        const double v = p[static_cast<std::size_t>(i)];
        return v > floor ? v : floor;
    }
};

FlooredDensity floored(const DensityField& p) {
    return {p.values, density_floor(p),
            static_cast<std::ptrdiff_t>(p.values.size()),
            p.grid.boundary == Boundary::Periodic};
}

void require_shift_aligned(const DensityField& p, const ModelParams& params) {
    const double want = params.shift_length();
    const double have = p.grid.shift_length();
    if (std::abs(have - want) > 1e-12 * want)
        throw std::invalid_argument("nonlin: grid shift length does not match eta*L");
}

double q1nl_at(const FlooredDensity& d, std::ptrdiff_t i, std::ptrdiff_t s, double eta,
               double prefactor) {
    const double pc = d.at(i);
    const double pp = d.at(i + s);
    const double pm = d.at(i - s);
    const double dplus = (1.0 - eta) * pc + eta * pp;
    const double dminus = (1.0 - eta) * pm + eta * pc;
    const double bracket =
        std::log(pc / dplus) + 1.0 - (1.0 - eta) * pc / dplus - eta * pm / dminus;
    return prefactor * bracket;
}

}  // namespace

double clamp_bound(const ModelParams& params) {
    const double pref = params.escale() / std::pow(params.eta, 4);
    return pref * (std::abs(std::log(1e-12)) + 2.0);
}

NonlinearField bohm_potential(const DensityField& p, const ModelParams& params) {
    const auto d = floored(p);
    const std::ptrdiff_t n = d.n;
    const double dx2 = p.grid.dx * p.grid.dx;
    const double kin = params.hbar * params.hbar / (2.0 * params.mass);
    const double cb = clamp_bound(params);

    std::vector<double> r(p.values.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = std::sqrt(d.at(i));
    const double r_floor = std::sqrt(d.floor);
    auto r_at = [&](std::ptrdiff_t i) -> double {
        if (d.periodic) {
            i %= n;
            if (i < 0) i += n;
            return r[static_cast<std::size_t>(i)];
        }
        if (i < 0 || i >= n) return r_floor;
        return r[static_cast<std::size_t>(i)];
    };

    NonlinearField out;
    out.grid = p.grid;
    out.values.resize(p.values.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double ri = r[static_cast<std::size_t>(i)];
        const double d2 = (r_at(i + 1) - 2.0 * ri + r_at(i - 1)) / dx2;
        double q = -kin * d2 / ri;
        if (p.values[static_cast<std::size_t>(i)] < d.floor) q = std::clamp(q, -cb, cb);
        out.values[static_cast<std::size_t>(i)] = q;
    }
    return out;
}

NonlinearField q1nl(const DensityField& p, const ModelParams& params) {
    require_shift_aligned(p, params);
    const auto d = floored(p);
    const auto s = static_cast<std::ptrdiff_t>(p.grid.shift_cells);
    const double eta = params.eta;
    const double pref = params.escale() / std::pow(eta, 4);
    const double cb = clamp_bound(params);

    NonlinearField out;
    out.grid = p.grid;
    out.values.resize(p.values.size());
    for (std::ptrdiff_t i = 0; i < d.n; ++i) {
        double q = q1nl_at(d, i, s, eta, pref);
        if (p.values[static_cast<std::size_t>(i)] < d.floor) q = std::clamp(q, -cb, cb);
        out.values[static_cast<std::size_t>(i)] = q;
    }
    return out;
}

NonlinearField f1(const DensityField& p, const ModelParams& params) {
    NonlinearField a = q1nl(p, params);
    const NonlinearField b = bohm_potential(p, params);
    const double cb = clamp_bound(params);
    const double floor = density_floor(p);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        a.values[i] -= b.values[i];
        if (p.values[i] < floor) a.values[i] = std::clamp(a.values[i], -cb, cb);
    }
    return a;
}

double fisher_energy(const DensityField& p, const ModelParams& params) {
    const auto d = floored(p);
    const std::ptrdiff_t n = d.n;
    std::vector<double> r(p.values.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = std::sqrt(d.at(i));

    const std::size_t edges = d.periodic ? p.values.size() : p.values.size() - 1;
    std::vector<double> sq(edges);
    for (std::size_t i = 0; i < edges; ++i) {
        const double dr = r[(i + 1) % p.values.size()] - r[i];
        sq[i] = dr * dr;
    }
    const double kin = params.hbar * params.hbar / (2.0 * params.mass);
    return kin * pairwise_sum(sq) / p.grid.dx;
}

double kl_energy(const DensityField& p, const ModelParams& params) {
    require_shift_aligned(p, params);
    const auto d = floored(p);
    const auto s = static_cast<std::ptrdiff_t>(p.grid.shift_cells);
    const double eta = params.eta;

    std::vector<double> integrand(p.values.size());
    for (std::ptrdiff_t i = 0; i < d.n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const double pv = p.values[ui];
        if (pv < d.floor) {
            integrand[ui] = 0.0;
            continue;
        }
        const double pc = d.at(i);
        const double mix = (1.0 - eta) * pc + eta * d.at(i + s);
        integrand[ui] = pv * std::log(pc / mix);
    }
    const double pref = params.escale() / std::pow(eta, 4);
    double ukl = pref * integrate(p.grid, integrand);
    if (ukl < 0.0) {
        // analytically >= 0; forgive summation dust only
        double absmax = 0.0;
        for (double v : integrand) absmax = std::max(absmax, std::abs(v));
        if (-ukl <= 1e-12 * pref * absmax * static_cast<double>(p.values.size()) * p.grid.dx)
            ukl = 0.0;
    }
    return ukl;
}

double total_energy(const WaveField& psi, const PotentialSpec& V, const ModelParams& params) {
    const std::size_t n = psi.values.size();
    const bool periodic = psi.grid.boundary == Boundary::Periodic;
    const double kin = params.hbar * params.hbar / (2.0 * params.mass);

    // Dirichlet kinetic form; padded grids treat psi as zero outside.
    std::vector<double> sq(periodic ? n : n + 1);
    for (std::size_t i = 0; i + 1 < n; ++i) sq[i] = std::norm(psi.values[i + 1] - psi.values[i]);
    if (periodic) {
        sq[n - 1] = std::norm(psi.values[0] - psi.values[n - 1]);
    } else {
        sq[n - 1] = std::norm(psi.values[n - 1]);
        sq[n] = std::norm(psi.values[0]);
    }
    const double kinetic = kin * pairwise_sum(sq) / psi.grid.dx;

    const DensityField p = density_of(psi);
    const std::vector<double> v = potential_values(V, psi.grid, params);
    std::vector<double> vp(n);
    for (std::size_t i = 0; i < n; ++i) vp[i] = v[i] * p.values[i];
    const double potential = integrate(psi.grid, vp);

    return kinetic + potential + kl_energy(p, params) - fisher_energy(p, params);
}

double functional_derivative_check(Functional f, const DensityField& p,
                                   std::size_t probe_index, double h,
                                   const ModelParams& params) {
    if (p.grid.boundary != Boundary::Periodic)
        throw std::invalid_argument("functional_derivative_check: periodic grid required");
    if (probe_index >= p.values.size())
        throw std::out_of_range("functional_derivative_check: probe_index");
    if (!(h > 0.0))
        throw std::invalid_argument("functional_derivative_check: h must be positive");

    const double bump = h / p.grid.dx;
    const double floor = density_floor(p);
    if (p.values[probe_index] - bump <= floor || p.values[probe_index] < floor)
        return std::numeric_limits<double>::infinity();

    auto eval = [&](const DensityField& q) {
        return f == Functional::Fisher ? fisher_energy(q, params) : kl_energy(q, params);
    };
    DensityField plus = p, minus = p;
    plus.values[probe_index] += bump;
    minus.values[probe_index] -= bump;
    const double fd = (eval(plus) - eval(minus)) / (2.0 * h);

    const NonlinearField field =
        f == Functional::Fisher ? bohm_potential(p, params) : q1nl(p, params);
    const double ref = field.values[probe_index];
    return std::abs(fd - ref) / std::max(1.0, std::abs(ref));
}

}  // namespace qnl::nonlin
