#pragma once

// Linear response of the cavity to a weak probe on top of the pumped steady
// state. Sideband amplitudes multiply e^{-i delta t} (a_plus, the probe tone)
// and e^{+i delta t} (a_minus, the four-wave-mixing tone).

#include <complex>
#include <optional>
#include <span>

#include "optomech/params.hpp"
#include "optomech/steady_state.hpp"

namespace optomech {

using cplx = std::complex<double>;

enum class TransmissionConvention {
    FluxNormalized,  // t_p = 1 - 2 kappa a_plus / E_r (dimensionless)
    PaperLiteral,    // t_p = 1 - sqrt(2 kappa) a_plus / E_r
};

/// eta = omega_n^2 / (omega_n^2 - delta^2 - i gamma_n delta).
cplx susceptibility_eta(double delta, double omega_n, double gamma_n);

struct ResponseCoefficients {
    cplx eta;
    double alpha = 0.0;
    cplx beta;   // alpha^2 eta^2 omega_n^2 n_p^2
    cplx theta;  // i alpha omega_n n_p (eta + 1)
};

ResponseCoefficients response_coefficients(const SystemParams& sys, double n_p, double delta);

/// a_plus from the closed-form expression
///   a_plus = (delta + Delta_p + i(kappa + theta))
///            / ((delta + i kappa)^2 + (theta - i Delta_p)^2 + beta) * i E_r.
cplx probe_amplitude_closed_form(const SystemParams& sys, const DriveAmplitudes& drive, double n_p);

struct SidebandAmplitudes {
    cplx plus;
    cplx minus;
};

/// Solves the first-order (in E_r) equations for a_plus and conj(a_minus)
/// directly as a 2x2 complex linear system. Independent of the closed form.
SidebandAmplitudes probe_amplitudes_linear_system(const SystemParams& sys,
                                                  const DriveAmplitudes& drive, double n_p);

cplx transmission(const SystemParams& sys, cplx a_plus, double probe_amplitude,
                  TransmissionConvention convention = TransmissionConvention::FluxNormalized);

struct ProbeResponse {
    cplx a_plus;
    cplx a_minus;
    cplx t_p;
    double magnitude = 0.0;
    double phase = 0.0;  // arg(t_p); unwrapped when part of a sweep
    std::optional<double> group_delay;
};

/// Full probe response at drive.probe_detuning. t_p is computed from the
/// response per unit probe amplitude, so it does not depend on E_r at all.
ProbeResponse evaluate_probe(const SystemParams& sys, const DriveAmplitudes& drive,
                             const SteadyState& state,
                             TransmissionConvention convention = TransmissionConvention::FluxNormalized);

/// t_p at the given drive, independent of drive.probe.
cplx transmission_at(const SystemParams& sys, const DriveAmplitudes& drive, double n_p,
                     TransmissionConvention convention = TransmissionConvention::FluxNormalized);

/// Sequential 2π-branch correction. The first element is mapped into (-π, π].
void unwrap_phase(std::span<double> phase);

struct GroupDelay {
    double seconds = 0.0;
    double step = 0.0;  // final stencil half-width in omega_r (rad/s)
    int halvings = 0;
};

struct GroupDelayOptions {
    double initial_step_over_kappa = 1e-3;
    double tolerance = 1e-3;
    int max_halvings = 6;
};

/// tau_g = d arg(t_p) / d omega_r at the probe detuning in `drive`, with
/// the pump (and therefore n_p) held fixed. Central differences at h and
/// h/2 must agree to `tolerance`; the returned value is their Richardson
/// extrapolation.
GroupDelay group_delay_at(const SystemParams& sys, const DriveAmplitudes& drive, double n_p,
                          TransmissionConvention convention = TransmissionConvention::FluxNormalized,
                          const GroupDelayOptions& options = {});

/// Group delay at omega_r = omega_c (delta = Delta_p) for the pump power
/// `pump_power_w`, other drive fields taken from `drive_template`.
GroupDelay group_delay(const SystemParams& sys, const DriveParams& drive_template,
                       double pump_power_w,
                       TransmissionConvention convention = TransmissionConvention::FluxNormalized,
                       std::optional<double> hint = std::nullopt);

}  // namespace optomech
