#include "qnl/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnl::lattice {

namespace {

void require_positive(double p_a, double p_b, const char* who) {
    if (!(p_a > 0.0) || !(p_b > 0.0)) throw std::invalid_argument(std::string(who) +
                                                                  ": densities must be positive");
}

void require_eta(double eta, const char* who) {
    if (!(eta > 0.0 && eta <= 1.0))
        throw std::invalid_argument(std::string(who) + ": eta must be in (0, 1]");
}

// B(u) for the general-eta step, minus the last (u-independent) term.
double bracket_head(double u, double eta) {
    const double w = (1.0 - eta) + eta * u;
    return std::log(1.0 / w) + 1.0 - (1.0 - eta) / w;
}

}  // namespace

double step_forward_eta1(double p_prev, double p_cur, double e_ratio) {
    require_positive(p_prev, p_cur, "step_forward_eta1");
    return p_cur * std::exp(1.0 - p_prev / p_cur - e_ratio);
}

std::optional<double> step_backward_eta1(double p_cur, double p_next, double e_ratio) {
    require_positive(p_cur, p_next, "step_backward_eta1");
    const double bracket = std::log(p_cur / p_next) + 1.0 - e_ratio;
    if (!(bracket > 0.0)) return std::nullopt;
    return p_cur * bracket;
}

std::optional<double> step_forward_general(double p_prev, double p_cur, double e_ratio,
                                           double eta) {
    require_positive(p_prev, p_cur, "step_forward_general");
    require_eta(eta, "step_forward_general");

    const double tail = eta * p_prev / ((1.0 - eta) * p_prev + eta * p_cur);
    const double target = eta * eta * eta * eta * e_ratio + tail;
    // B_head(u) = target; B_head is strictly decreasing, sup at u -> 0+ is
    // -ln(1-eta) for eta < 1 (and +inf at eta = 1).
    if (eta < 1.0 && target >= -std::log(1.0 - eta)) return std::nullopt;

    double lo = 1.0, hi = 1.0;
    while (bracket_head(lo, eta) <= target) {
        lo *= 0.5;
        if (lo < 1e-300) return std::nullopt;
    }
    while (bracket_head(hi, eta) > target) {
        hi *= 2.0;
        if (hi > 1e300) return std::nullopt;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (bracket_head(mid, eta) > target)
            lo = mid;
        else
            hi = mid;
    }
    return p_cur * 0.5 * (lo + hi);
}

std::optional<double> step_backward_general(double p_cur, double p_next, double e_ratio,
                                            double eta) {
    require_positive(p_cur, p_next, "step_backward_general");
    require_eta(eta, "step_backward_general");

    const double u = p_next / p_cur;
    const double k = bracket_head(u, eta) - eta * eta * eta * eta * e_ratio;
    // Solve eta p_prev / ((1-eta) p_prev + eta p_cur) = k for p_prev.
    if (!(k > 0.0)) return std::nullopt;                      // positivity fails -> truncation
    const double denom = eta - k * (1.0 - eta);
    if (!(denom > 0.0)) return std::nullopt;                  // no finite positive p_prev
    return k * eta * p_cur / denom;
}

RatioMapAnalysis ratio_fixed_points(double e_ratio) {
    RatioMapAnalysis out;
    out.c = e_ratio;
    const double c = e_ratio;
    if (c > 0.0) return out;
    if (c == 0.0) {
        out.fixed_points.push_back(1.0);
        out.stability.push_back(Stability::Neutral);
        return out;
    }
    auto f = [c](double t) { return std::exp(t + c - 1.0) - t; };
    // minimum of f at t = 1 - c with f(1-c) = c < 0; roots bracket it
    const double tmin = 1.0 - c;
    double lo = 1e-300, hi = tmin;
    for (int it = 0; it < 300 && hi - lo > 1e-15 * (hi + 1.0); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double t_minus = 0.5 * (lo + hi);
    lo = tmin;
    hi = tmin * 2.0 + 2.0;
    while (f(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 300 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double t_plus = 0.5 * (lo + hi);
    out.fixed_points = {t_minus, t_plus};
    out.stability = {t_minus < 1.0 ? Stability::Stable : Stability::Unstable,
                     t_plus < 1.0 ? Stability::Stable : Stability::Unstable};
    return out;
}

LatticeTrajectory classify_trajectory(double eta, double e_ratio, double p_prev, double p_cur,
                                      int window, double bound) {
    if (window < 1 || window > 1'000'000)
        throw std::invalid_argument("classify_trajectory: window must be in [1, 1e6]");
    require_positive(p_prev, p_cur, "classify_trajectory");
    require_eta(eta, "classify_trajectory");

    LatticeTrajectory traj;
    traj.eta = eta;
    traj.e_ratio = e_ratio;
    traj.seed_prev = p_prev;
    traj.seed_cur = p_cur;

    if (e_ratio == 0.0 && p_prev == p_cur) {
        traj.forward_class = TrajectoryClass::Constant;
        traj.backward_class = TrajectoryClass::Constant;
        traj.values = {p_prev, p_cur};
        traj.first_index = 0;
        return traj;
    }

    const double underflow = 1e-300 * std::max(p_prev, p_cur);

    std::vector<double> fwd;  // indices 2, 3, ...
    {
        double a = p_prev, b = p_cur;
        traj.forward_class = TrajectoryClass::Inconclusive;
        for (int k = 0; k < window; ++k) {
            double next;
            if (eta == 1.0) {
                next = step_forward_eta1(a, b, e_ratio);
            } else {
                const auto r = step_forward_general(a, b, e_ratio, eta);
                if (!r) {
                    traj.forward_class = TrajectoryClass::NoSolution;
                    break;
                }
                next = *r;
            }
            if (!std::isfinite(next)) {
                traj.forward_class = TrajectoryClass::Unbounded;
                break;
            }
            if (next <= underflow) {
                traj.forward_class = TrajectoryClass::BoundedDecaying;
                break;
            }
            fwd.push_back(next);
            if (next > bound) {
                traj.forward_class = TrajectoryClass::Unbounded;
                break;
            }
            a = b;
            b = next;
        }
    }

    std::vector<double> bwd;  // indices -1, -2, ...
    {
        double b = p_prev, c = p_cur;  // solving for index below b's
        traj.backward_class = TrajectoryClass::Inconclusive;
        for (int k = 0; k < window; ++k) {
            const auto r = eta == 1.0 ? step_backward_eta1(b, c, e_ratio)
                                      : step_backward_general(b, c, e_ratio, eta);
            if (!r) {
                traj.backward_class = TrajectoryClass::TruncatedAt;
                traj.truncation_index = -(k + 1);
                break;
            }
            if (!std::isfinite(*r)) {
                traj.backward_class = TrajectoryClass::Unbounded;
                break;
            }
            bwd.push_back(*r);
            if (*r > bound) {
                traj.backward_class = TrajectoryClass::Unbounded;
                break;
            }
            c = b;
            b = *r;
        }
    }

    traj.first_index = -static_cast<int>(bwd.size());
    traj.values.reserve(bwd.size() + 2 + fwd.size());
    for (std::size_t i = bwd.size(); i-- > 0;) traj.values.push_back(bwd[i]);
    traj.values.push_back(p_prev);
    traj.values.push_back(p_cur);
    for (double v : fwd) traj.values.push_back(v);
    return traj;
}

const char* to_string(TrajectoryClass c) {
    switch (c) {
        case TrajectoryClass::BoundedDecaying: return "BoundedDecaying";
        case TrajectoryClass::Constant: return "Constant";
        case TrajectoryClass::Unbounded: return "Unbounded";
        case TrajectoryClass::TruncatedAt: return "TruncatedAt";
        case TrajectoryClass::NoSolution: return "NoSolution";
        case TrajectoryClass::Inconclusive: return "Inconclusive";
    }
    return "?";
}

}  // namespace qnl::lattice
