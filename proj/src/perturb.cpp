#include "qnl/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qnl/minimize.hpp"
#include "qnl/nonlin.hpp"

namespace qnl::perturb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

spectra::EigenPair unperturbed_state(int n, const ModelParams& params, const Grid1D& grid,
                                     const PotentialSpec& V) {
    if (is_harmonic(V)) return spectra::sho_eigenstate(n, 1.0, grid, params);
    auto pairs = spectra::linear_eigensolve(V, grid, params, static_cast<std::size_t>(n) + 1);
    return std::move(pairs.back());
}

Grid1D scan_grid(int n, double eta, double L, const PotentialFamily& family,
                 const GridPolicy& policy) {
    const double hw = policy.halfwidth.value_or(family.halfwidth + std::sqrt(2.0 * n + 1.0));
    const double shift = eta * L;
    return make_grid(hw, eta, L, shift / policy.cells_per_shift, policy.boundary);
}

PotentialSpec family_on_grid(const PotentialFamily& family, const Grid1D& grid,
                             const ModelParams& params) {
    if (family.harmonic_omega) return Harmonic{*family.harmonic_omega};
    (void)params;
    Tabulated t;
    t.values.resize(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) t.values[i] = family.v(grid.x(i));
    return t;
}

struct LinFit {
    double slope, intercept, r2;
};

LinFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0.0;
    const double mean_y = sy / n;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fit = slope * x[i] + intercept;
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    return {slope, intercept, ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0};
}

}  // namespace

double eta_shape_factor(double eta) {
    if (!(eta > 0.0 && eta < 1.0))
        throw std::invalid_argument("eta_shape_factor: eta must be in (0, 1)");
    return std::sqrt(eta * (1.0 - eta)) * (1.0 - 4.0 * eta);
}

double eta_minimizer_perturbative() {
    const auto res = golden_minimize([](double e) { return eta_shape_factor(e); },
                                     1e-9, 1.0 - 1e-9, 1e-12);
    const double closed_form = (7.0 + std::sqrt(33.0)) / 16.0;
    if (std::abs(res.x - closed_form) > 1e-8)
        throw std::logic_error("eta_minimizer_perturbative: golden section disagrees with "
                               "the stationarity root");
    return res.x;
}

double first_order_shift(const spectra::EigenPair& state, const ModelParams& params) {
    const Grid1D& grid = state.psi.grid;
    if (grid.dx > params.shift_length() / 20.0 * (1.0 + 1e-12))
        throw std::invalid_argument("first_order_shift: grid under-resolved (need dx <= eta*L/20)");

    // deltaE = int p (Q_1NL - Q) dx.  The p*Q_1NL part has a node-safe
    // integrand (zeroed below the density floor, like kl_energy); the p*Q
    // part is summed by parts into the Fisher form, which is finite through
    // nodes without any flooring and keeps the identity
    // deltaE = U_KL - I_F exact at the discrete level.
    const DensityField p = density_of(state.psi);
    const double floor = density_floor(p);
    const nonlin::NonlinearField field = nonlin::q1nl(p, params);
    std::vector<double> integrand(p.values.size());
    for (std::size_t i = 0; i < integrand.size(); ++i)
        integrand[i] = p.values[i] < floor ? 0.0 : p.values[i] * field.values[i];
    return integrate(grid, integrand) - nonlin::fisher_energy(p, params);
}

double first_order_shift(int n, const ModelParams& params, const Grid1D& grid,
                         const PotentialSpec& V) {
    return first_order_shift(unperturbed_state(n, params, grid, V), params);
}

EtaScanResult eta_scan(int n, double L, const std::vector<double>& etas,
                       const PotentialFamily& family, const ModelParams& base,
                       const GridPolicy& policy) {
    if (etas.empty()) throw std::invalid_argument("eta_scan: empty eta list");
    EtaScanResult result;
    result.rows.reserve(etas.size());
    for (double eta : etas) {
        ModelParams params = base;
        params.eta = eta;
        params.L = L;
        params.validate();
        const Grid1D grid = scan_grid(n, eta, L, family, policy);
        const PotentialSpec V = family_on_grid(family, grid, params);
        const double de = first_order_shift(n, params, grid, V);
        result.rows.push_back({n, eta, L, de, kNaN, kNaN});
    }

    // argmin from a quadratic fit through the scan minimum and neighbors
    std::size_t imin = 0;
    for (std::size_t i = 1; i < result.rows.size(); ++i)
        if (result.rows[i].deltaE < result.rows[imin].deltaE) imin = i;
    const std::size_t lo = imin >= 2 ? imin - 2 : 0;
    const std::size_t hi = std::min(imin + 2, result.rows.size() - 1);
    if (hi - lo >= 2) {
        // least-squares parabola
        double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, t0 = 0, t1 = 0, t2 = 0;
        for (std::size_t i = lo; i <= hi; ++i) {
            const double x = result.rows[i].eta, y = result.rows[i].deltaE;
            s0 += 1;
            s1 += x;
            s2 += x * x;
            s3 += x * x * x;
            s4 += x * x * x * x;
            t0 += y;
            t1 += x * y;
            t2 += x * x * y;
        }
        // solve [s4 s3 s2; s3 s2 s1; s2 s1 s0] [a b c] = [t2 t1 t0]
        const double d = s4 * (s2 * s0 - s1 * s1) - s3 * (s3 * s0 - s1 * s2) +
                         s2 * (s3 * s1 - s2 * s2);
        const double a = (t2 * (s2 * s0 - s1 * s1) - s3 * (t1 * s0 - t0 * s1) +
                          s2 * (t1 * s1 - t0 * s2)) / d;
        const double b = (s4 * (t1 * s0 - t0 * s1) - t2 * (s3 * s0 - s1 * s2) +
                          s2 * (s3 * t0 - s2 * t1)) / d;
        result.argmin_eta = a > 0.0 ? -b / (2.0 * a) : result.rows[imin].eta;
    } else {
        result.argmin_eta = result.rows[imin].eta;
    }

    for (std::size_t i = 0; i + 1 < result.rows.size(); ++i) {
        if ((result.rows[i].deltaE > 0.0) != (result.rows[i + 1].deltaE > 0.0)) {
            result.sign_change = {result.rows[i].eta, result.rows[i + 1].eta};
            break;
        }
    }
    return result;
}

C2Fit extract_C2(int n, double eta, const std::vector<double>& L_list,
                 const PotentialFamily& family, const ModelParams& base,
                 const GridPolicy& policy) {
    if (L_list.size() < 3)
        throw std::invalid_argument("extract_C2: need at least three L values");
    C2Fit fit;
    std::vector<double> lnL, lnD, X, D;
    for (double L : L_list) {
        ModelParams params = base;
        params.eta = eta;
        params.L = L;
        params.validate();
        const Grid1D grid = scan_grid(n, eta, L, family, policy);
        const PotentialSpec V = family_on_grid(family, grid, params);
        const double de = first_order_shift(n, params, grid, V);
        fit.rows.push_back({n, eta, L, de, kNaN, kNaN});
        lnL.push_back(std::log(L));
        lnD.push_back(std::log(std::abs(de)));
        X.push_back(params.hbar * params.hbar * std::numbers::pi / (6.0 * params.mass) *
                    eta_shape_factor(eta) * std::abs(L));
        D.push_back(de);
    }
    fit.exponent = least_squares(lnL, lnD).slope;
    const LinFit lf = least_squares(X, D);
    fit.c2 = lf.slope;
    fit.r2 = lf.r2;
    for (auto& row : fit.rows) {
        row.exponent_fit = fit.exponent;
        row.c2_estimate = fit.c2;
    }
    if (std::abs(fit.exponent - 1.0) > 0.3) {
        fit.ok = false;
        fit.message = "shift does not scale linearly in |L| (exponent " +
                      std::to_string(fit.exponent) + "); state has no usable nodes";
        return fit;
    }
    if (lf.r2 < 0.99) {
        fit.ok = false;
        fit.message = "poor linear fit, R^2 = " + std::to_string(lf.r2);
        return fit;
    }
    fit.ok = true;
    return fit;
}

PotentialFamily harmonic_family(const ModelParams& params, int max_n) {
    PotentialFamily f;
    f.harmonic_omega = params.omega;
    const double k = 0.5 * params.mass * params.omega * params.omega;
    f.v = [k](double x) { return k * x * x; };
    f.halfwidth = (std::sqrt(2.0 * max_n + 1.0) + 5.5) * params.a();
    return f;
}

PotentialFamily quartic_well_family(double strength, int max_n) {
    PotentialFamily f;
    f.v = [strength](double x) { return strength * x * x * x * x; };
    // turning point of the top state plus a tunneling margin
    const double e_top = std::pow(max_n + 0.5, 4.0 / 3.0) * std::pow(strength, 1.0 / 3.0) * 1.4;
    f.halfwidth = std::pow(e_top / strength, 0.25) + 1.8;
    return f;
}

}  // namespace qnl::perturb
