#include "optomech/params.hpp"

#include <cmath>
#include <string>

#include "optomech/error.hpp"

namespace optomech {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorKind::InvalidParameter,
                    std::string(name) + " must be finite and > 0, got " + std::to_string(value));
    }
}

void require_nonnegative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw Error(ErrorKind::InvalidParameter,
                    std::string(name) + " must be finite and >= 0, got " + std::to_string(value));
    }
}

}  // namespace

SystemParams SystemParams::from_angular(double omega_c, double omega_n, double kappa,
                                        double lambda, double gamma_n) {
    require_positive(omega_c, "omega_c");
    require_positive(omega_n, "omega_n");
    require_positive(kappa, "kappa");
    require_nonnegative(lambda, "lambda");
    require_positive(gamma_n, "gamma_n");
    return {omega_c, omega_n, kappa, lambda, gamma_n};
}

double SystemParams::alpha() const noexcept {
    return 2.0 * lambda_ * lambda_ / (omega_n_ * omega_n_);
}

SystemParams SystemParams::with_lambda(double lambda) const {
    return from_angular(omega_c_, omega_n_, kappa_, lambda, gamma_n_);
}

SystemParams make_system_params(double f_c_hz, double f_n_hz, double kappa_hz, double lambda_hz,
                                double q_n, LambdaUnit lambda_unit) {
    require_positive(f_c_hz, "f_c");
    require_positive(f_n_hz, "f_n");
    require_positive(kappa_hz, "kappa");
    require_nonnegative(lambda_hz, "lambda");
    require_positive(q_n, "q_n");
    const double omega_n = kTwoPi * f_n_hz;
    const double lambda = lambda_unit == LambdaUnit::Cyclic ? kTwoPi * lambda_hz : lambda_hz;
    return SystemParams::from_angular(kTwoPi * f_c_hz, omega_n, kTwoPi * kappa_hz, lambda,
                                      omega_n / q_n);
}

SystemParams reference_device() {
    return make_system_params(7.5e9, 6.3e6, 6.0e5, 250.0, 1e6, LambdaUnit::RadPerSecond);
}

double drive_amplitude(double power_w, double kappa, double omega) {
    require_nonnegative(power_w, "power");
    require_positive(kappa, "kappa");
    require_positive(omega, "omega");
    return std::sqrt(2.0 * power_w * kappa / (kHbar * omega));
}

DriveAmplitudes resolve_drive(const SystemParams& sys, const DriveParams& drive) {
    const double omega_p = sys.omega_c() - drive.pump_detuning;
    const double omega_r = omega_p + drive.probe_detuning;
    if (!(omega_p > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "pump frequency omega_c - Delta_p must be > 0");
    }
    if (!(omega_r > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "probe frequency omega_p + delta must be > 0");
    }
    DriveAmplitudes out;
    out.pump = drive_amplitude(drive.pump_power_w, sys.kappa(), omega_p);
    out.probe = drive_amplitude(drive.probe_power_w, sys.kappa(), omega_r);
    out.pump_detuning = drive.pump_detuning;
    out.probe_detuning = drive.probe_detuning;
    return out;
}

}  // namespace optomech
