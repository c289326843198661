#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "optomech/params.hpp"

namespace optomech::testing {

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::abs(b);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

/// kappa = 1, alpha omega_n = 1, Delta_p = 4, |E_p|^2 = 10: roots are 1, 2, 5.
inline SystemParams bistable_system() {
    // alpha omega_n = 2 lambda^2 / omega_n = 1 with omega_n = 1.
    return SystemParams::from_angular(100.0, 1.0, 1.0, std::sqrt(0.5), 1e-3);
}

inline DriveAmplitudes bistable_drive(double pump_squared = 10.0) {
    return {std::sqrt(pump_squared), 0.0, 4.0, 4.0};
}

/// Dimensionless test system with omega_n = 1, kappa = 0.1, gamma_n = 0.02.
inline SystemParams scaled_system(double lambda = 1e-3) {
    return SystemParams::from_angular(100.0, 1.0, 0.1, lambda, 0.02);
}

/// Pump amplitude that puts n_p photons in the cavity at the given detuning.
inline double pump_for_photons(const SystemParams& sys, double detuning, double n_p) {
    const double shift = detuning - sys.omega_n() * sys.alpha() * n_p;
    return std::sqrt(n_p * (sys.kappa() * sys.kappa() + shift * shift));
}

}  // namespace optomech::testing
