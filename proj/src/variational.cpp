#include "qnl/variational.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "qnl/fields.hpp"
#include "qnl/minimize.hpp"
#include "qnl/nonlin.hpp"
#include "qnl/spectra.hpp"

namespace qnl::variational {

namespace {

Grid1D trial_grid(int n, double c, const ModelParams& params) {
    const double a = params.a();
    const double extent = (std::sqrt(2.0 * n + 1.0) + 7.0) * c * a;
    const double hw = std::max(extent, 0.55 * params.shift_length());
    double target_dx = c * a / (12.0 * std::sqrt(n + 1.0));
    if (n >= 1) {
        // nodal densities put near-zeros of (1-eta) p + eta p_+ at the
        // shifted nodes; the log integrand there varies on the
        // sqrt(1-eta)-wide crossover, which the quadrature must resolve
        const double crossover =
            std::sqrt(std::max(1.0 - params.eta, 1e-6)) * c * a / 8.0;
        target_dx = std::min(target_dx, crossover);
    }
    return make_grid(hw, params.eta, params.L, target_dx, Boundary::PaddedFloor);
}

}  // namespace

double variational_energy(int n, double c, const ModelParams& params) {
    if (!(c >= kCFloor && c <= kCCeil))
        throw std::invalid_argument("variational_energy: c outside [1e-3, 10]");
    const Grid1D grid = trial_grid(n, c, params);
    const spectra::EigenPair state = spectra::sho_eigenstate(n, c, grid, params);
    const DensityField p = density_of(state.psi);

    const double k = 0.5 * params.mass * params.omega * params.omega;
    std::vector<double> vp(p.values.size());
    for (std::size_t i = 0; i < vp.size(); ++i) {
        const double x = grid.x(i);
        vp[i] = k * x * x * p.values[i];
    }
    return integrate(grid, vp) + nonlin::kl_energy(p, params);
}

VariationalPoint minimize_over_c(int n, const ModelParams& params) {
    constexpr int kSeeds = 40;
    const double lf = std::log(kCFloor), lc = std::log(kCCeil);

    std::vector<double> cs(kSeeds), es(kSeeds);
    bool any_ok = false;
    for (int i = 0; i < kSeeds; ++i) {
        cs[i] = std::exp(lf + (lc - lf) * i / (kSeeds - 1.0));
        try {
            es[i] = variational_energy(n, cs[i], params);
            any_ok = true;
        } catch (const std::exception&) {
            es[i] = std::numeric_limits<double>::infinity();
        }
    }

    VariationalPoint point;
    point.n = n;
    point.eta = params.eta;
    point.eps = params.eps();
    if (!any_ok) {
        point.converged = false;
        point.c_star = std::numeric_limits<double>::quiet_NaN();
        point.e_star = std::numeric_limits<double>::quiet_NaN();
        return point;
    }

    // local minima of the seed scan, endpoints included
    std::vector<int> basins;
    for (int i = 0; i < kSeeds; ++i) {
        const bool left_ok = i == 0 || es[i] <= es[i - 1];
        const bool right_ok = i == kSeeds - 1 || es[i] <= es[i + 1];
        if (std::isfinite(es[i]) && left_ok && right_ok) basins.push_back(i);
    }
    std::sort(basins.begin(), basins.end(), [&](int a, int b) { return es[a] < es[b]; });
    if (basins.size() > 3) basins.resize(3);

    double best_c = cs[0], best_e = std::numeric_limits<double>::infinity();
    for (int i : basins) {
        const double lo = std::log(cs[std::max(0, i - 1)]);
        const double hi = std::log(cs[std::min(kSeeds - 1, i + 1)]);
        const auto res = golden_minimize(
            [&](double u) {
                try {
                    return variational_energy(n, std::exp(u), params);
                } catch (const std::exception&) {
                    return std::numeric_limits<double>::infinity();
                }
            },
            lo, hi, 1e-6);
        if (res.fx < best_e) {
            best_e = res.fx;
            best_c = std::exp(res.x);
        }
        ++point.restarts_used;
    }

    point.c_star = best_c;
    point.e_star = best_e;
    point.converged = std::isfinite(best_e);
    return point;
}

std::vector<VariationalPoint> sweep(int n, const std::vector<double>& etas,
                                    const std::vector<double>& eps_list,
                                    const ModelParams& base, int threads) {
    struct Job {
        double eta, eps;
    };
    std::vector<Job> jobs;
    for (double eta : etas)
        for (double eps : eps_list) jobs.push_back({eta, eps});

    std::vector<VariationalPoint> points(jobs.size());
    auto run = [&](std::size_t j) {
        ModelParams params = base;
        params.eta = jobs[j].eta;
        params.L = jobs[j].eps * base.a();
        try {
            params.validate();
            points[j] = minimize_over_c(n, params);
        } catch (const std::exception&) {
            points[j].n = n;
            points[j].eta = jobs[j].eta;
            points[j].eps = jobs[j].eps;
            points[j].converged = false;
            points[j].c_star = std::numeric_limits<double>::quiet_NaN();
            points[j].e_star = std::numeric_limits<double>::quiet_NaN();
        }
    };

    threads = std::max(1, threads);
    if (threads == 1 || jobs.size() < 2) {
        for (std::size_t j = 0; j < jobs.size(); ++j) run(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1))
                    run(j);
            });
        for (auto& th : pool) th.join();
    }
    // jobs were generated in (eta, eps) order already; points align by index
    return points;
}

}  // namespace qnl::variational
