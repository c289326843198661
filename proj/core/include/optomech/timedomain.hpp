#pragma once

// Time-domain oracle. Integrates the mean-field equations of motion in the
// frame rotating at the pump frequency,
//
//   da/dt    = -(i Delta_p + kappa) a + i lambda a Q + E_p + E_r e^{-i delta t}
//   Q'' + gamma_n Q' + omega_n^2 Q = 2 omega_n lambda |a|^2
//
// with fixed-step RK4, then demodulates the settled trajectory into the
// tones {1, e^{-i delta t}, e^{+i delta t}}.

#include <complex>
#include <iosfwd>
#include <vector>

#include "optomech/params.hpp"

namespace optomech {

struct OscillatorState {
    std::complex<double> a;
    double q = 0.0;
    double q_dot = 0.0;
};

struct Trajectory {
    double dt = 0.0;
    std::vector<double> t;
    std::vector<std::complex<double>> a;
    std::vector<double> q;
    std::vector<double> q_dot;

    [[nodiscard]] std::size_t size() const noexcept { return t.size(); }
};

/// Largest allowed dt * max(omega_n, |Delta_p|, kappa).
inline constexpr double kMaxPhaseStep = 0.1;

/// One RK4 step from time t.
OscillatorState rk4_step(const SystemParams& sys, const DriveAmplitudes& drive,
                         const OscillatorState& state, double t, double dt);

/// Integrates from t = 0 to t_end on a uniform grid. Throws Divergence if a
/// sample becomes non-finite; InvalidParameter if dt violates the
/// resolution rule or the grid has fewer than two samples.
Trajectory integrate(const SystemParams& sys, const DriveAmplitudes& drive,
                     const OscillatorState& initial, double t_end, double dt);

/// Final state only; no samples are stored.
OscillatorState integrate_final(const SystemParams& sys, const DriveAmplitudes& drive,
                                const OscillatorState& initial, double t_end, double dt);

struct DemodulationResult {
    std::complex<double> a0;
    std::complex<double> a_plus;
    std::complex<double> a_minus;
    /// Power left after removing the three tones, as a fraction of the power
    /// of the fluctuating part a(t) - a0. Zero when there is no fluctuation.
    double residual = 0.0;
};

/// Projects the last `periods` beat periods (2π/|delta|) of `traj` onto the
/// three tones. The window must hold at least 5 periods and an integer
/// number of samples per window, i.e. periods * 2π/|delta| must be a
/// multiple of dt.
DemodulationResult demodulate(const Trajectory& traj, double delta, int periods = 16);

struct CrosscheckOptions {
    /// Settling time in units of 1/gamma_n before the window starts.
    double settle_over_gamma = 10.0;
    int periods = 16;
    /// Samples per beat period; dt = 2π/(|delta| samples_per_period),
    /// refined further if the resolution rule requires it.
    int samples_per_period = 128;
    double small_probe_ratio = 1e-3;
    double residual_limit = 0.01;
};

struct CrosscheckReport {
    DemodulationResult measured;
    std::complex<double> expected_a0;
    std::complex<double> expected_a_plus;
    std::complex<double> expected_a_minus;
    double error_a0 = 0.0;
    double error_a_plus = 0.0;
    /// Relative to |a_plus| when the expected a_minus vanishes.
    double error_a_minus = 0.0;
    bool small_probe = true;
    bool valid = true;
    double dt = 0.0;
    double t_end = 0.0;
};

/// Runs integrate + demodulate starting from the pump-only steady state and
/// compares against the frequency-domain solution.
CrosscheckReport crosscheck(const SystemParams& sys, const DriveAmplitudes& drive,
                            const CrosscheckOptions& options = {});

/// CSV dump: t, Re a, Im a, Q, Qdot.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

}  // namespace optomech
