#include "qnl/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qnl::spectra {

namespace {

// Fix sign so the rightmost significant lobe is positive.
void fix_sign(std::vector<std::complex<double>>& v) {
    double mx = 0.0;
    for (const auto& z : v) mx = std::max(mx, std::abs(z.real()));
    if (mx == 0.0) return;
    for (std::size_t i = v.size(); i-- > 0;) {
        if (std::abs(v[i].real()) > 1e-3 * mx) {
            if (v[i].real() < 0.0)
                for (auto& z : v) z = -z;
            return;
        }
    }
}

}  // namespace

EigenPair sho_eigenstate(int n, double width_c, const Grid1D& grid, const ModelParams& params) {
    if (n < 0) throw std::invalid_argument("sho_eigenstate: n must be >= 0");
    if (!(width_c > 0.0)) throw std::invalid_argument("sho_eigenstate: width_c must be positive");

    const double b = width_c * params.a();
    const double inv_sqrt_b = 1.0 / std::sqrt(b);
    const double norm0 = std::pow(std::numbers::pi, -0.25);

    WaveField psi;
    psi.grid = grid;
    psi.values.resize(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double xi = grid.x(i) / b;
        double prev = 0.0;
        double cur = norm0 * std::exp(-0.5 * xi * xi);
        for (int k = 0; k < n; ++k) {
            const double next = std::sqrt(2.0 / (k + 1.0)) * xi * cur -
                                std::sqrt(k / (k + 1.0)) * prev;
            prev = cur;
            cur = next;
        }
        psi.values[i] = cur * inv_sqrt_b;
    }
    normalize(psi);

    if (std::abs(psi.values.front().real()) > 1e-8 ||
        std::abs(psi.values.back().real()) > 1e-8)
        throw std::domain_error("sho_eigenstate: grid too narrow to hold the state");

    fix_sign(psi.values);
    return {n, (n + 0.5) * params.hbar * params.omega, std::move(psi)};
}

namespace {

// Number of eigenvalues of the tridiagonal (diag d, uniform offdiag e) below lambda.
int sturm_count(const std::vector<double>& d, double e, double lambda) {
    const double e2 = e * e;
    int count = 0;
    double q = d[0] - lambda;
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        q = (d[i] - lambda) - e2 / q;
        if (q == 0.0) q = -1e-300;
        if (q < 0.0) ++count;
    }
    return count;
}

// Smallest lambda with sturm_count(lambda) >= j+1, i.e. the j-th eigenvalue.
double bisect_eigenvalue(const std::vector<double>& d, double e, int j, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (std::abs(lo) + std::abs(hi) + 1.0); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(d, e, mid) >= j + 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Solve (T - lambda I) x = b for tridiagonal T with partial pivoting.
void tridiag_shifted_solve(const std::vector<double>& d, double e, double lambda,
                           std::vector<double>& x) {
    const std::size_t n = d.size();
    std::vector<double> diag(n), sup(n, 0.0), sup2(n, 0.0), sub(n, e);
    for (std::size_t i = 0; i < n; ++i) diag[i] = d[i] - lambda;
    for (std::size_t i = 0; i + 1 < n; ++i) sup[i] = e;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i + 1]) > std::abs(diag[i])) {
            std::swap(diag[i], sub[i + 1]);
            std::swap(sup[i], diag[i + 1]);
            std::swap(sup2[i], sup[i + 1]);
            std::swap(x[i], x[i + 1]);
        }
        if (diag[i] == 0.0) diag[i] = 1e-300;
        const double m = sub[i + 1] / diag[i];
        diag[i + 1] -= m * sup[i];
        sup[i + 1] -= m * sup2[i];
        x[i + 1] -= m * x[i];
    }
    if (diag[n - 1] == 0.0) diag[n - 1] = 1e-300;
    x[n - 1] /= diag[n - 1];
    if (n >= 2) x[n - 2] = (x[n - 2] - sup[n - 2] * x[n - 1]) / diag[n - 2];
    for (std::size_t i = n - 2; i-- > 0;)
        x[i] = (x[i] - sup[i] * x[i + 1] - sup2[i] * x[i + 2]) / diag[i];
}

}  // namespace

std::vector<EigenPair> linear_eigensolve(const PotentialSpec& V, const Grid1D& grid,
                                         const ModelParams& params, std::size_t k) {
    if (grid.boundary != Boundary::PaddedFloor)
        throw std::invalid_argument("linear_eigensolve: Dirichlet (PaddedFloor) grids only");
    if (k >= grid.count / 4)
        throw std::invalid_argument("linear_eigensolve: k must be < count/4");

    const std::vector<double> v = potential_values(V, grid, params);
    const double t = params.hbar * params.hbar / (2.0 * params.mass * grid.dx * grid.dx);
    std::vector<double> d(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) d[i] = 2.0 * t + v[i];
    const double e = -t;

    double lo = d[0], hi = d[0];
    for (double di : d) {
        lo = std::min(lo, di);
        hi = std::max(hi, di);
    }
    lo -= 2.0 * std::abs(e) + 1.0;
    hi += 2.0 * std::abs(e) + 1.0;

    std::vector<EigenPair> out;
    out.reserve(k);
    std::vector<std::vector<double>> vecs;
    for (std::size_t j = 0; j < k; ++j) {
        const double lambda = bisect_eigenvalue(d, e, static_cast<int>(j), lo, hi);

        // inverse iteration from a fixed pseudo-random start
        std::vector<double> x(grid.count);
        unsigned long long state = 0x9e3779b97f4a7c15ull + j;
        for (auto& xi : x) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            xi = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
        }
        // the bisected eigenvalue carries an eps * ||H|| absolute error, so
        // the vector's energy is taken from the Rayleigh quotient and the
        // convergence threshold scales with ||H||
        const double hnorm = std::max(std::abs(lo), std::abs(hi));
        const double shift = lambda + 1e-13 * hnorm;
        double resid = 0.0;
        double rayleigh = lambda;
        for (int iter = 0; iter < 8; ++iter) {
            tridiag_shifted_solve(d, e, shift, x);
            for (const auto& prev : vecs) {
                double dot = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * prev[i];
                for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dot * prev[i];
            }
            double nrm = 0.0;
            for (double xi : x) nrm += xi * xi;
            nrm = std::sqrt(nrm);
            for (auto& xi : x) xi /= nrm;

            rayleigh = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double hx = d[i] * x[i];
                if (i > 0) hx += e * x[i - 1];
                if (i + 1 < x.size()) hx += e * x[i + 1];
                rayleigh += x[i] * hx;
            }
            resid = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double hx = d[i] * x[i];
                if (i > 0) hx += e * x[i - 1];
                if (i + 1 < x.size()) hx += e * x[i + 1];
                const double r = hx - rayleigh * x[i];
                resid += r * r;
            }
            resid = std::sqrt(resid);
            if (resid < 1e-13 * hnorm) break;
        }
        if (resid > 1e-10 * hnorm)
            throw std::runtime_error("linear_eigensolve: inverse iteration did not converge, "
                                     "residual norm " + std::to_string(resid));
        vecs.push_back(x);

        EigenPair pair;
        pair.n = static_cast<int>(j);
        pair.energy = rayleigh;
        pair.psi.grid = grid;
        pair.psi.values.assign(x.begin(), x.end());
        normalize(pair.psi);
        fix_sign(pair.psi.values);
        out.push_back(std::move(pair));
    }
    return out;
}

int count_nodes(const WaveField& psi) {
    double mx = 0.0;
    for (const auto& z : psi.values) mx = std::max(mx, std::abs(z.real()));
    const double thresh = 1e-8 * mx;
    int nodes = 0;
    int last_sign = 0;
    for (const auto& z : psi.values) {
        const double v = z.real();
        if (std::abs(v) <= thresh) continue;
        const int sign = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++nodes;
        last_sign = sign;
    }
    return nodes;
}

}  // namespace qnl::spectra
