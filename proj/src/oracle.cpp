#include "qfluid/oracle.hpp"

#include <cmath>
#include <numbers>

namespace qfluid {

double OracleWave::centre(double t) const noexcept { return p_.a * std::cos(p_.omega * t); }

double OracleWave::phase(double x, double t) const noexcept {
    const double w = p_.omega;
    const double k = w / (2.0 * p_.D);
    return -(0.5 * w * t + k * p_.a * x * std::sin(w * t) -
             0.25 * k * p_.a * p_.a * std::sin(2.0 * w * t));
}

std::complex<double> OracleWave::psi(double x, double t) const noexcept {
    const double w = p_.omega;
    const double amp = std::pow(w / (2.0 * std::numbers::pi * p_.D), 0.25);
    const double d = x - centre(t);
    return std::polar(amp * std::exp(-(w / (4.0 * p_.D)) * d * d), phase(x, t));
}

double OracleWave::density(double x, double t) const noexcept {
    const double w = p_.omega;
    const double d = x - centre(t);
    return std::sqrt(w / (2.0 * std::numbers::pi * p_.D)) * std::exp(-(w / (2.0 * p_.D)) * d * d);
}

double OracleWave::velocity(double t) const noexcept {
    return -p_.a * p_.omega * std::sin(p_.omega * t);
}

double OracleWave::external_potential(double x) const noexcept {
    return 0.5 * p_.omega * p_.omega * x * x;
}

double OracleWave::potential_Q(double x, double t) const noexcept {
    const double d = x - centre(t);
    return p_.D * p_.omega - 0.5 * p_.omega * p_.omega * d * d;
}

double OracleWave::force(double x, double t) const noexcept {
    return p_.omega * p_.omega * (x - centre(t));
}

double OracleWave::energy(double x, double t) const noexcept {
    const double w = p_.omega;
    return p_.D * w + p_.a * w * w * x * std::cos(w * t) -
           0.5 * p_.a * p_.a * w * w * std::cos(2.0 * w * t);
}

double OracleWave::center_energy() const noexcept {
    return p_.D * p_.omega + 0.5 * p_.a * p_.a * p_.omega * p_.omega;
}

}  // namespace qfluid
