#pragma once

// Device and drive parameters. Everything inside the library is in angular
// units (rad/s); Hz and watts only appear at the construction boundary.

#include <numbers>

namespace optomech {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// Reduced Planck constant, J s (CODATA 2018, exact).
inline constexpr double kHbar = 1.054571817e-34;

/// How a coupling quoted "in Hz" is turned into rad/s.
enum class LambdaUnit {
    RadPerSecond,  // value used as-is
    Cyclic,        // value multiplied by 2π
};

/// Fixed device constants, all angular (rad/s).
class SystemParams {
public:
    /// Construct from angular quantities. omega_c, omega_n, kappa and
    /// gamma_n must be > 0, lambda must be >= 0.
    static SystemParams from_angular(double omega_c, double omega_n, double kappa,
                                     double lambda, double gamma_n);

    [[nodiscard]] double omega_c() const noexcept { return omega_c_; }
    [[nodiscard]] double omega_n() const noexcept { return omega_n_; }
    [[nodiscard]] double kappa() const noexcept { return kappa_; }
    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    [[nodiscard]] double gamma_n() const noexcept { return gamma_n_; }

    /// alpha = 2 lambda^2 / omega_n^2.
    [[nodiscard]] double alpha() const noexcept;
    /// Good-cavity limit, omega_n > kappa.
    [[nodiscard]] bool resolved_sideband() const noexcept { return omega_n_ > kappa_; }

    /// Copy with a different coupling (used for lambda = 0 reference runs).
    [[nodiscard]] SystemParams with_lambda(double lambda) const;

private:
    SystemParams(double omega_c, double omega_n, double kappa, double lambda, double gamma_n)
        : omega_c_(omega_c), omega_n_(omega_n), kappa_(kappa), lambda_(lambda), gamma_n_(gamma_n) {}

    double omega_c_;
    double omega_n_;
    double kappa_;
    double lambda_;
    double gamma_n_;
};

/// Build from lab-frame frequencies in Hz and the mechanical quality factor.
/// gamma_n = omega_n / q_n. The coupling is converted according to
/// `lambda_unit`; with LambdaUnit::Cyclic it is multiplied by 2π like every
/// other frequency.
SystemParams make_system_params(double f_c_hz, double f_n_hz, double kappa_hz, double lambda_hz,
                                double q_n, LambdaUnit lambda_unit);

/// Device values of the reference resonator: f_c = 7.5 GHz, f_n = 6.3 MHz,
/// kappa = 600 kHz, lambda = 250 (read as rad/s), Q_n = 1e6.
SystemParams reference_device();

/// |E| = sqrt(2 P kappa / (hbar omega)) in s^-1.
double drive_amplitude(double power_w, double kappa, double omega);

/// Pump and probe settings as a user specifies them.
struct DriveParams {
    double pump_power_w = 0.0;
    double probe_power_w = 0.0;
    /// Delta_p = omega_c - omega_p (rad/s).
    double pump_detuning = 0.0;
    /// delta = omega_r - omega_p (rad/s).
    double probe_detuning = 0.0;

    /// Delta_r = omega_r - omega_c = delta - Delta_p.
    [[nodiscard]] double probe_cavity_detuning() const noexcept {
        return probe_detuning - pump_detuning;
    }
};

/// Drive expressed as field amplitudes. This is what the equations of
/// motion consume; scaled-unit studies construct it directly.
struct DriveAmplitudes {
    double pump = 0.0;   // |E_p|, s^-1
    double probe = 0.0;  // |E_r|, s^-1
    double pump_detuning = 0.0;
    double probe_detuning = 0.0;

    [[nodiscard]] double probe_cavity_detuning() const noexcept {
        return probe_detuning - pump_detuning;
    }
};

/// Converts powers to amplitudes using omega_p = omega_c - Delta_p and
/// omega_r = omega_p + delta. Throws if either carrier frequency is <= 0
/// or a power is negative.
DriveAmplitudes resolve_drive(const SystemParams& sys, const DriveParams& drive);

}  // namespace optomech
