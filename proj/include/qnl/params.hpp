#pragma once

#include <cmath>
#include <stdexcept>

namespace qnl {

/// Physical constants plus the two nonlinearity parameters (eta, L).
///
/// Defaults are natural units hbar = m = omega = 1, so the oscillator
/// length a = sqrt(hbar/(m omega)) is 1 and energies come out in units
/// of hbar*omega.  The energy scale of the nonlinearity is tied to its
/// length scale by  escale * L^2 = hbar^2 / (4 m).
struct ModelParams {
    double hbar  = 1.0;
    double mass  = 1.0;
    double omega = 1.0;  ///< reference trap frequency, defines a
    double eta   = 0.5;  ///< regulator, 0 < eta <= 1
    double L     = 1.0;  ///< nonlinearity length scale, > 0

    ModelParams() = default;
    ModelParams(double eta_, double L_) : eta(eta_), L(L_) { validate(); }

    /// Oscillator length a = sqrt(hbar/(m omega)).
    double a() const { return std::sqrt(hbar / (mass * omega)); }

    /// Dimensionless nonlinearity scale eps = L/a.
    double eps() const { return L / a(); }

    /// Energy scale, escale = hbar^2/(4 m L^2).
    double escale() const { return hbar * hbar / (4.0 * mass * L * L); }

    /// Nonlocal shift distance eta*L.
    double shift_length() const { return eta * L; }

    void validate() const {
        if (!(eta > 0.0 && eta <= 1.0))
            throw std::invalid_argument("ModelParams: eta must be in (0, 1]");
        if (!(L > 0.0))
            throw std::invalid_argument("ModelParams: L must be positive");
        if (!(hbar > 0.0 && mass > 0.0 && omega > 0.0))
            throw std::invalid_argument("ModelParams: hbar, mass, omega must be positive");
    }

    /// Params with L specified through eps = L/a.
    static ModelParams from_eps(double eta, double eps) {
        ModelParams p;
        p.eta = eta;
        p.L = eps * p.a();
        p.validate();
        return p;
    }
};

}  // namespace qnl
