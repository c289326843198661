#include "optomech/timedomain.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "optomech/error.hpp"
#include "optomech/format.hpp"
#include "optomech/linear_response.hpp"
#include "optomech/steady_state.hpp"

namespace optomech {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

struct Derivative {
    std::complex<double> a;
    double q;
    double q_dot;
};

Derivative rhs(const SystemParams& sys, const DriveAmplitudes& drive, const OscillatorState& s,
               double t) {
    const double wn = sys.omega_n();
    const double lambda = sys.lambda();
    const std::complex<double> probe = drive.probe * std::polar(1.0, -drive.probe_detuning * t);
    Derivative d;
    d.a = -std::complex<double>(sys.kappa(), drive.pump_detuning) * s.a + kI * lambda * s.a * s.q +
          drive.pump + probe;
    d.q = s.q_dot;
    d.q_dot = -sys.gamma_n() * s.q_dot - wn * wn * s.q + 2.0 * wn * lambda * std::norm(s.a);
    return d;
}

OscillatorState advance(const OscillatorState& s, const Derivative& d, double h) {
    return {s.a + h * d.a, s.q + h * d.q, s.q_dot + h * d.q_dot};
}

bool finite(const OscillatorState& s) {
    return std::isfinite(s.a.real()) && std::isfinite(s.a.imag()) && std::isfinite(s.q) &&
           std::isfinite(s.q_dot);
}

std::size_t step_count(const SystemParams& sys, const DriveAmplitudes& drive, double t_end,
                       double dt) {
    if (!(dt > 0.0) || !(t_end > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "t_end and dt must be > 0");
    }
    const double fastest =
        std::max({sys.omega_n(), std::abs(drive.pump_detuning), sys.kappa()});
    if (dt * fastest > kMaxPhaseStep * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "dt = " << dt << " s under-resolves the dynamics (dt * max rate = " << dt * fastest
            << " > " << kMaxPhaseStep << ")";
        throw Error(ErrorKind::InvalidParameter, msg.str());
    }
    const double steps = std::round(t_end / dt);
    if (steps < 1.0) throw Error(ErrorKind::InvalidParameter, "trajectory needs >= 2 samples");
    return static_cast<std::size_t>(steps);
}

[[noreturn]] void throw_divergence(double t) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "integration diverged; last finite time t = " << t << " s";
    throw Error(ErrorKind::Divergence, msg.str());
}

double relative_error(std::complex<double> measured, std::complex<double> expected, double scale) {
    return std::abs(measured - expected) / scale;
}

}  // namespace

OscillatorState rk4_step(const SystemParams& sys, const DriveAmplitudes& drive,
                         const OscillatorState& s, double t, double dt) {
    const double half = 0.5 * dt;
    const Derivative k1 = rhs(sys, drive, s, t);
    const Derivative k2 = rhs(sys, drive, advance(s, k1, half), t + half);
    const Derivative k3 = rhs(sys, drive, advance(s, k2, half), t + half);
    const Derivative k4 = rhs(sys, drive, advance(s, k3, dt), t + dt);
    const double w = dt / 6.0;
    return {s.a + w * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a),
            s.q + w * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q),
            s.q_dot + w * (k1.q_dot + 2.0 * k2.q_dot + 2.0 * k3.q_dot + k4.q_dot)};
}

Trajectory integrate(const SystemParams& sys, const DriveAmplitudes& drive,
                     const OscillatorState& initial, double t_end, double dt) {
    const std::size_t steps = step_count(sys, drive, t_end, dt);
    Trajectory traj;
    traj.dt = dt;
    traj.t.reserve(steps + 1);
    traj.a.reserve(steps + 1);
    traj.q.reserve(steps + 1);
    traj.q_dot.reserve(steps + 1);

    OscillatorState s = initial;
    if (!finite(s)) throw Error(ErrorKind::InvalidParameter, "initial state is not finite");
    for (std::size_t i = 0;; ++i) {
        const double t = static_cast<double>(i) * dt;
        traj.t.push_back(t);
        traj.a.push_back(s.a);
        traj.q.push_back(s.q);
        traj.q_dot.push_back(s.q_dot);
        if (i == steps) break;
        s = rk4_step(sys, drive, s, t, dt);
        if (!finite(s)) throw_divergence(t);
    }
    return traj;
}

OscillatorState integrate_final(const SystemParams& sys, const DriveAmplitudes& drive,
                                const OscillatorState& initial, double t_end, double dt) {
    const std::size_t steps = step_count(sys, drive, t_end, dt);
    OscillatorState s = initial;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        s = rk4_step(sys, drive, s, t, dt);
        if (!finite(s)) throw_divergence(t);
    }
    return s;
}

DemodulationResult demodulate(const Trajectory& traj, double delta, int periods) {
    if (periods < 5) throw Error(ErrorKind::Windowing, "demodulation window needs >= 5 beat periods");
    if (delta == 0.0) throw Error(ErrorKind::Windowing, "beat frequency delta must be nonzero");
    if (traj.size() < 2 || !(traj.dt > 0.0)) {
        throw Error(ErrorKind::Windowing, "trajectory too short to demodulate");
    }
    const double window = periods * kTwoPi / std::abs(delta);
    const double samples_exact = window / traj.dt;
    const double samples_rounded = std::round(samples_exact);
    if (std::abs(samples_exact - samples_rounded) > 1e-6 * samples_exact) {
        std::ostringstream msg;
        msg << "window of " << periods << " beat periods is " << samples_exact
            << " samples; it must be an integer multiple of dt";
        throw Error(ErrorKind::Windowing, msg.str());
    }
    const auto n = static_cast<std::size_t>(samples_rounded);
    if (n > traj.size()) {
        throw Error(ErrorKind::Windowing, "trajectory is shorter than the demodulation window");
    }

    // Last n samples, one full set of periods (the final sample is excluded
    // so that the window tiles the periods exactly).
    const std::size_t first = traj.size() - 1 - n;
    std::complex<double> s0, sp, sm;
    for (std::size_t i = first; i < first + n; ++i) {
        const std::complex<double> rot = std::polar(1.0, delta * traj.t[i]);
        s0 += traj.a[i];
        sp += traj.a[i] * rot;
        sm += traj.a[i] * std::conj(rot);
    }
    const double inv = 1.0 / static_cast<double>(n);
    DemodulationResult out{s0 * inv, sp * inv, sm * inv, 0.0};

    double fluctuation = 0.0;
    double leftover = 0.0;
    for (std::size_t i = first; i < first + n; ++i) {
        const std::complex<double> rot = std::polar(1.0, delta * traj.t[i]);
        const std::complex<double> ac = traj.a[i] - out.a0;
        fluctuation += std::norm(ac);
        leftover += std::norm(ac - out.a_plus * std::conj(rot) - out.a_minus * rot);
    }
    out.residual = fluctuation > 0.0 ? std::clamp(leftover / fluctuation, 0.0, 1.0) : 0.0;
    return out;
}

CrosscheckReport crosscheck(const SystemParams& sys, const DriveAmplitudes& drive,
                            const CrosscheckOptions& options) {
    const double delta = drive.probe_detuning;
    if (delta == 0.0) throw Error(ErrorKind::InvalidParameter, "crosscheck needs delta != 0");

    CrosscheckReport report;
    report.small_probe = drive.probe <= options.small_probe_ratio * drive.pump;

    const SteadyState state = steady_state(sys, drive);
    const SidebandAmplitudes sidebands = probe_amplitudes_linear_system(sys, drive, state.n_p());
    report.expected_a0 = state.a0;
    report.expected_a_plus = sidebands.plus;
    report.expected_a_minus = sidebands.minus;

    // Pick dt so that a beat period is an integer number of steps and the
    // resolution rule holds.
    const double period = kTwoPi / std::abs(delta);
    const double fastest =
        std::max({sys.omega_n(), std::abs(drive.pump_detuning), sys.kappa()});
    int per_period = std::max(options.samples_per_period, 1);
    while (period / per_period * fastest > kMaxPhaseStep) per_period *= 2;
    const double dt = period / per_period;

    const double window_periods = options.periods;
    const double settle = options.settle_over_gamma / sys.gamma_n();
    const double settle_periods = std::ceil(settle / period);
    const double t_end = (settle_periods + window_periods) * period;
    report.dt = dt;
    report.t_end = t_end;

    const OscillatorState initial{state.a0, state.q0, 0.0};
    const Trajectory traj = integrate(sys, drive, initial, t_end, dt);
    report.measured = demodulate(traj, delta, options.periods);

    const double a0_scale = std::max(std::abs(report.expected_a0), 1e-300);
    const double plus_scale = std::max(std::abs(report.expected_a_plus), 1e-300);
    report.error_a0 = relative_error(report.measured.a0, report.expected_a0, a0_scale);
    report.error_a_plus =
        relative_error(report.measured.a_plus, report.expected_a_plus, plus_scale);
    const double minus_scale = std::abs(report.expected_a_minus) > 1e-12 * plus_scale
                                   ? std::abs(report.expected_a_minus)
                                   : plus_scale;
    report.error_a_minus =
        relative_error(report.measured.a_minus, report.expected_a_minus, minus_scale);
    report.valid = report.small_probe && report.measured.residual < options.residual_limit;
    return report;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
    out << "t_s,re_a,im_a,q,q_dot\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << format_double(traj.t[i]) << ',' << format_double(traj.a[i].real()) << ','
            << format_double(traj.a[i].imag()) << ',' << format_double(traj.q[i]) << ','
            << format_double(traj.q_dot[i]) << '\n';
    }
    if (!out) throw Error(ErrorKind::Io, "failed to write trajectory CSV");
}

}  // namespace optomech
