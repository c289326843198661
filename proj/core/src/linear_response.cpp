#include "optomech/linear_response.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "optomech/error.hpp"

namespace optomech {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kSingularGuard = 1e-300;

[[noreturn]] void throw_singular(const char* what, double delta) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " at delta = " << delta << " rad/s";
    throw Error(ErrorKind::SingularResponse, msg.str());
}

// a_plus / (i E_r) from the closed form.
cplx closed_form_per_unit(const SystemParams& sys, double pump_detuning, double delta, double n_p) {
    const ResponseCoefficients c = response_coefficients(sys, n_p, delta);
    const double kappa = sys.kappa();
    const cplx numerator = delta + pump_detuning + kI * (kappa + c.theta);
    const cplx a = delta + kI * kappa;
    const cplx b = c.theta - kI * pump_detuning;
    const cplx denominator = a * a + b * b + c.beta;
    if (!(std::abs(denominator) > kSingularGuard)) {
        throw_singular("vanishing closed-form denominator", delta);
    }
    return numerator / denominator;
}

cplx transmission_per_unit(const SystemParams& sys, cplx a_plus_per_unit,
                           TransmissionConvention convention) {
    const double coupling = convention == TransmissionConvention::FluxNormalized
                                ? 2.0 * sys.kappa()
                                : std::sqrt(2.0 * sys.kappa());
    return 1.0 - coupling * a_plus_per_unit;
}

}  // namespace

cplx susceptibility_eta(double delta, double omega_n, double gamma_n) {
    if (!(omega_n > 0.0)) throw Error(ErrorKind::InvalidParameter, "omega_n must be > 0");
    if (!(gamma_n >= 0.0)) throw Error(ErrorKind::InvalidParameter, "gamma_n must be >= 0");
    const double w2 = omega_n * omega_n;
    const cplx denominator{w2 - delta * delta, -gamma_n * delta};
    if (denominator == 0.0) throw_singular("mechanical pole", delta);
    return w2 / denominator;
}

ResponseCoefficients response_coefficients(const SystemParams& sys, double n_p, double delta) {
    if (!(n_p >= 0.0)) throw Error(ErrorKind::InvalidParameter, "n_p must be >= 0");
    ResponseCoefficients c;
    const double wn = sys.omega_n();
    c.eta = susceptibility_eta(delta, wn, sys.gamma_n());
    c.alpha = sys.alpha();
    c.beta = c.alpha * c.alpha * c.eta * c.eta * wn * wn * n_p * n_p;
    c.theta = kI * c.alpha * wn * n_p * (c.eta + 1.0);
    return c;
}

cplx probe_amplitude_closed_form(const SystemParams& sys, const DriveAmplitudes& drive, double n_p) {
    return closed_form_per_unit(sys, drive.pump_detuning, drive.probe_detuning, n_p) * kI *
           drive.probe;
}

SidebandAmplitudes probe_amplitudes_linear_system(const SystemParams& sys,
                                                  const DriveAmplitudes& drive, double n_p) {
    if (!(n_p >= 0.0)) throw Error(ErrorKind::InvalidParameter, "n_p must be >= 0");
    const double kappa = sys.kappa();
    const double wn = sys.omega_n();
    const double lambda = sys.lambda();
    const double delta = drive.probe_detuning;

    // Pump field with |a0|^2 = n_p; its phase follows the steady-state relation.
    const double q0 = 2.0 * lambda * n_p / wn;
    const double effective_detuning = drive.pump_detuning - lambda * q0;
    cplx a0 = std::sqrt(n_p);
    if (drive.pump != 0.0) {
        a0 *= std::polar(1.0, -std::atan2(effective_detuning, kappa));
    }

    // Mechanical sideband: Q_plus = g (conj(a0) a_plus + a0 conj(a_minus)).
    const cplx g = 2.0 * lambda * susceptibility_eta(delta, wn, sys.gamma_n()) / wn;
    const cplx coupling = kI * lambda * g;

    // Unknowns x = a_plus, y = conj(a_minus).
    const cplx m11 = kappa + kI * (effective_detuning - delta) - coupling * n_p;
    const cplx m12 = -coupling * a0 * a0;
    const cplx m21 = coupling * std::conj(a0) * std::conj(a0);
    const cplx m22 = kappa - kI * (effective_detuning + delta) + coupling * n_p;
    const cplx det = m11 * m22 - m12 * m21;
    if (!(std::abs(det) > kSingularGuard)) throw_singular("singular linearized system", delta);

    const double rhs = drive.probe;
    const cplx x = m22 * rhs / det;
    const cplx y = -m21 * rhs / det;
    return {x, std::conj(y)};
}

cplx transmission(const SystemParams& sys, cplx a_plus, double probe_amplitude,
                  TransmissionConvention convention) {
    if (probe_amplitude == 0.0) {
        throw Error(ErrorKind::InvalidParameter, "transmission needs a nonzero probe amplitude");
    }
    return transmission_per_unit(sys, a_plus / probe_amplitude, convention);
}

cplx transmission_at(const SystemParams& sys, const DriveAmplitudes& drive, double n_p,
                     TransmissionConvention convention) {
    const cplx per_unit =
        closed_form_per_unit(sys, drive.pump_detuning, drive.probe_detuning, n_p) * kI;
    return transmission_per_unit(sys, per_unit, convention);
}

ProbeResponse evaluate_probe(const SystemParams& sys, const DriveAmplitudes& drive,
                             const SteadyState& state, TransmissionConvention convention) {
    const double n_p = state.n_p();
    const cplx per_unit =
        closed_form_per_unit(sys, drive.pump_detuning, drive.probe_detuning, n_p) * kI;
    ProbeResponse out;
    out.a_plus = per_unit * drive.probe;
    out.a_minus = probe_amplitudes_linear_system(sys, drive, n_p).minus;
    out.t_p = transmission_per_unit(sys, per_unit, convention);
    out.magnitude = std::abs(out.t_p);
    out.phase = std::arg(out.t_p);
    return out;
}

void unwrap_phase(std::span<double> phase) {
    if (phase.empty()) return;
    constexpr double pi = std::numbers::pi;
    double previous_raw = phase[0];
    double first = std::remainder(phase[0], kTwoPi);
    if (first <= -pi) first += kTwoPi;
    phase[0] = first;
    for (std::size_t i = 1; i < phase.size(); ++i) {
        const double raw = phase[i];
        phase[i] = phase[i - 1] + std::remainder(raw - previous_raw, kTwoPi);
        previous_raw = raw;
    }
}

GroupDelay group_delay_at(const SystemParams& sys, const DriveAmplitudes& drive, double n_p,
                          TransmissionConvention convention, const GroupDelayOptions& options) {
    // Varying omega_r with the pump fixed moves delta one-for-one.
    auto slope = [&](double h) {
        DriveAmplitudes shifted = drive;
        shifted.probe_detuning = drive.probe_detuning - h;
        const cplx lower = transmission_at(sys, shifted, n_p, convention);
        const cplx centre = transmission_at(sys, drive, n_p, convention);
        shifted.probe_detuning = drive.probe_detuning + h;
        const cplx upper = transmission_at(sys, shifted, n_p, convention);
        return (std::arg(centre / lower) + std::arg(upper / centre)) / (2.0 * h);
    };

    double h = options.initial_step_over_kappa * sys.kappa();
    double coarse = slope(h);
    for (int halvings = 0; halvings <= options.max_halvings; ++halvings) {
        const double fine = slope(0.5 * h);
        const double scale = std::max(std::abs(fine), 1e-9 / sys.kappa());
        if (std::abs(coarse - fine) <= options.tolerance * scale) {
            return {(4.0 * fine - coarse) / 3.0, 0.5 * h, halvings};
        }
        h *= 0.5;
        coarse = fine;
    }
    std::ostringstream msg;
    msg.precision(6);
    msg << "group delay did not converge after " << options.max_halvings
        << " halvings (delta = " << drive.probe_detuning << " rad/s, last step " << h
        << " rad/s, last estimate " << coarse << " s)";
    throw Error(ErrorKind::DifferentiationFailure, msg.str());
}

GroupDelay group_delay(const SystemParams& sys, const DriveParams& drive_template,
                       double pump_power_w, TransmissionConvention convention,
                       std::optional<double> hint) {
    DriveParams drive = drive_template;
    drive.pump_power_w = pump_power_w;
    drive.probe_detuning = drive.pump_detuning;
    const DriveAmplitudes amplitudes = resolve_drive(sys, drive);
    const SteadyState state = steady_state(sys, amplitudes, hint);
    return group_delay_at(sys, amplitudes, state.n_p(), convention);
}

}  // namespace optomech
