#pragma once

#include <complex>

#include "qfluid/core.hpp"

namespace qfluid {

/// Closed-form coherent wave packet of the harmonic oscillator under the
/// generalized Schrodinger equation
///
///     D^2 psi_xx + i D psi_t - (omega^2 x^2 / 4) psi = 0.
///
/// The packet is normalized to unit probability; multiply densities by M to
/// obtain mass densities. Everything here is a pure function of (x, t).
class OracleWave {
public:
    explicit OracleWave(PhysicalParams params) : p_(params) {}

    [[nodiscard]] const PhysicalParams& params() const noexcept { return p_; }

    [[nodiscard]] double centre(double t) const noexcept;
    [[nodiscard]] std::complex<double> psi(double x, double t) const noexcept;
    /// Phase theta with psi = |psi| exp(i theta); the action is S = 2 D theta.
    [[nodiscard]] double phase(double x, double t) const noexcept;
    [[nodiscard]] double density(double x, double t) const noexcept;
    [[nodiscard]] double velocity(double t) const noexcept;
    /// External potential phi = omega^2 x^2 / 2.
    [[nodiscard]] double external_potential(double x) const noexcept;
    [[nodiscard]] double potential_Q(double x, double t) const noexcept;
    /// Quantum force -dQ/dx.
    [[nodiscard]] double force(double x, double t) const noexcept;
    /// E = V^2/2 + phi + Q.
    [[nodiscard]] double energy(double x, double t) const noexcept;
    /// Energy at the packet centre: zero-point term plus pendulum term.
    [[nodiscard]] double center_energy() const noexcept;

private:
    PhysicalParams p_;
};

}  // namespace qfluid
