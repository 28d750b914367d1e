#include "qnl/asymptotic.hpp"

#include <cmath>
#include <stdexcept>

#include "qnl/minimize.hpp"

namespace qnl::asymptotic {

namespace {
double g(double eta) { return -std::log(1.0 - eta) / (eta * eta * eta * eta); }
}  // namespace

CollapseResult collapse_energy(double eta, const ModelParams& params) {
    if (!(eta > 0.0 && eta < 1.0))
        throw std::domain_error("collapse_energy: requires 0 < eta < 1 (eta = 1 diverges)");
    const double gv = g(eta);
    return {eta, gv, gv * params.escale()};
}

double eta_minimizer_asymptotic() {
    const auto direct = golden_minimize([](double e) { return g(e); }, 1e-6, 1.0 - 1e-12, 1e-10);
    const double root = bisect_root(
        [](double e) { return e / (1.0 - e) + 4.0 * std::log(1.0 - e); }, 0.5, 0.999, 1e-13);
    if (std::abs(direct.x - root) > 1e-6)
        throw std::logic_error("eta_minimizer_asymptotic: direct minimum and stationarity "
                               "root disagree");
    return root;
}

}  // namespace qnl::asymptotic
