#pragma once

#include <optional>
#include <vector>

namespace qnl::lattice {

/// Forward step of the eta = 1 discrete stationary equation
///   E/escale = ln(p_n/p_{n+1}) + 1 - p_{n-1}/p_n:
/// p_next = p_cur * exp(1 - p_prev/p_cur - e_ratio), always positive
/// (may underflow to 0 or overflow to inf past the representable range).
double step_forward_eta1(double p_prev, double p_cur, double e_ratio);

/// Backward step: p_prev = p_cur (ln(p_cur/p_next) + 1 - e_ratio);
/// nullopt (truncation) when the bracket is <= 0 — probability positivity
/// fails and the lattice ends.
std::optional<double> step_backward_eta1(double p_cur, double p_next, double e_ratio);

/// General-eta forward step: the unique root u = p_next/p_cur of
///   B(u) = ln(1/((1-eta)+eta u)) + 1 - (1-eta)/((1-eta)+eta u)
///          - eta p_prev/((1-eta) p_prev + eta p_cur)
/// equal to eta^4 e_ratio, found by bisection (B is strictly decreasing).
/// nullopt when the target exceeds the u -> 0+ supremum.
std::optional<double> step_forward_general(double p_prev, double p_cur, double e_ratio,
                                           double eta);

/// General-eta backward step (closed form); nullopt when positivity fails
/// (the eta = 1 truncation) or no finite p_prev exists.
std::optional<double> step_backward_general(double p_cur, double p_next, double e_ratio,
                                            double eta);

enum class Stability { Stable, Unstable, Neutral };

/// Fixed points of the ratio map t_{n+1} = exp(t_n + c - 1) with c = E/escale:
/// two roots for c < 0, the tangent root t = 1 for c = 0, none for c > 0.
/// The map derivative at a fixed point equals t itself.
struct RatioMapAnalysis {
    double c = 0.0;
    std::vector<double> fixed_points;
    std::vector<Stability> stability;
};

RatioMapAnalysis ratio_fixed_points(double e_ratio);

enum class TrajectoryClass {
    BoundedDecaying,  ///< forward iteration decays below 1e-300 * seed scale
    Constant,         ///< exactly constant (equal seeds at e_ratio = 0)
    Unbounded,        ///< exceeded the caller's bound
    TruncatedAt,      ///< a backward step lost positivity
    NoSolution,       ///< general-eta step had no positive root
    Inconclusive,     ///< window exhausted
};

struct LatticeTrajectory {
    double eta = 1.0;
    double e_ratio = 0.0;
    double seed_prev = 1.0;  ///< p at index 0
    double seed_cur = 1.0;   ///< p at index 1
    std::vector<double> values;  ///< p at indices first_index .. first_index+size-1
    int first_index = 0;
    std::optional<int> truncation_index;  ///< present iff a backward step hit p <= 0
    TrajectoryClass forward_class = TrajectoryClass::Inconclusive;
    TrajectoryClass backward_class = TrajectoryClass::Inconclusive;
};

/// Iterate Eq.-of-motion forward and backward from seeds p(0) = p_prev,
/// p(1) = p_cur, classifying both directions.  window caps the steps per
/// direction (must be <= 1e6).
LatticeTrajectory classify_trajectory(double eta, double e_ratio, double p_prev, double p_cur,
                                      int window, double bound);

const char* to_string(TrajectoryClass c);

}  // namespace qnl::lattice
