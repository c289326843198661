#include "optomech/selftest.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "optomech/error.hpp"
#include "optomech/linear_response.hpp"
#include "optomech/steady_state.hpp"
#include "optomech/timedomain.hpp"

namespace optomech {

namespace {

std::string describe(double value) {
    std::ostringstream s;
    s.precision(6);
    s << value;
    return s.str();
}

SelftestCheck bare_cavity_unitarity() {
    const SystemParams sys = reference_device().with_lambda(0.0);
    const double kappa = sys.kappa();
    DriveAmplitudes drive{0.0, 1.0, sys.omega_n(), 0.0};
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double detuning_r = -5.0 * kappa + 10.0 * kappa * i / 1000.0;
        drive.probe_detuning = detuning_r + drive.pump_detuning;
        worst = std::max(worst, std::abs(std::abs(transmission_at(sys, drive, 0.0)) - 1.0));
    }
    return {"bare cavity |t_p| = 1", worst < 1e-12, "max deviation " + describe(worst)};
}

SelftestCheck bare_cavity_delay() {
    const SystemParams sys = reference_device().with_lambda(0.0);
    const DriveAmplitudes drive{0.0, 1.0, sys.omega_n(), sys.omega_n()};
    const double tau = group_delay_at(sys, drive, 0.0).seconds;
    const double expected = 2.0 / sys.kappa();
    const double err = std::abs(tau / expected - 1.0);
    return {"bare cavity tau_g = 2/kappa", err < 1e-6,
            "tau_g " + describe(tau) + " s, rel. error " + describe(err)};
}

SelftestCheck bare_cavity_sideband() {
    const SystemParams sys = reference_device().with_lambda(0.0);
    double worst = 0.0;
    for (double detuning_r : {-2.0, -0.3, 0.0, 0.7, 4.0}) {
        const double dr = detuning_r * sys.kappa();
        const DriveAmplitudes drive{1e10, 3e7, sys.omega_n(), sys.omega_n() + dr};
        const cplx expected = drive.probe / cplx(sys.kappa(), -dr);
        const SidebandAmplitudes s = probe_amplitudes_linear_system(sys, drive, 0.0);
        worst = std::max(worst, std::abs(probe_amplitude_closed_form(sys, drive, 0.0) - expected) /
                                    std::abs(expected));
        worst = std::max(worst, std::abs(s.plus - expected) / std::abs(expected));
        worst = std::max(worst, std::abs(s.minus));
    }
    return {"bare cavity a_plus = E_r/(kappa - i Delta_r)", worst < 1e-12,
            "max rel. error " + describe(worst)};
}

SelftestCheck cubic_oracle() {
    // kappa = 1, alpha omega_n = 1, Delta_p = 4, |E_p|^2 = 10: roots 1, 2, 5.
    const SystemParams sys = SystemParams::from_angular(100.0, 1.0, 1.0, std::sqrt(0.5), 1e-3);
    const DriveAmplitudes drive{std::sqrt(10.0), 0.0, 4.0, 4.0};
    const std::vector<double> roots = photon_number_roots(sys, drive);
    bool ok = roots.size() == 3;
    const double expected[] = {1.0, 2.0, 5.0};
    const Stability stable[] = {Stability::Stable, Stability::Unstable, Stability::Stable};
    for (std::size_t i = 0; ok && i < 3; ++i) {
        ok = std::abs(roots[i] - expected[i]) < 1e-9 &&
             std::abs(photon_number_residual(sys, drive, roots[i])) / 10.0 < 1e-10 &&
             classify_stability(sys, drive, roots[i]) == stable[i];
    }
    return {"cubic roots {1, 2, 5}, stable/unstable/stable", ok,
            std::to_string(roots.size()) + " roots"};
}

SelftestCheck closed_form_vs_linear_system() {
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto log_uniform = [&](double lo, double hi) {
        return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * unit(rng));
    };
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double wn = 1.0;
        const SystemParams sys = SystemParams::from_angular(
            1e3, wn, log_uniform(1e-3, 1.0), log_uniform(1e-4, 1e-1), log_uniform(1e-5, 1e-1));
        const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
        DriveAmplitudes drive{log_uniform(1e-3, 10.0), 1e-4, sign * wn * log_uniform(0.5, 2.0), 0.0};
        drive.probe_detuning = drive.pump_detuning + sys.kappa() * (4.0 * unit(rng) - 2.0);
        const double n_p = steady_state(sys, drive).n_p();
        const cplx closed = probe_amplitude_closed_form(sys, drive, n_p);
        const cplx linear = probe_amplitudes_linear_system(sys, drive, n_p).plus;
        worst = std::max(worst, std::abs(closed - linear) / std::abs(closed));
    }
    return {"closed form a_plus == 2x2 linear system", worst < 1e-9,
            "max rel. difference " + describe(worst)};
}

SelftestCheck scaled_crosscheck(double sign) {
    // omega_n = 1 units; G = lambda sqrt(n_p) = 0.01 gives cooperativity 0.2.
    const SystemParams sys = SystemParams::from_angular(100.0, 1.0, 0.1, 1e-3, 0.02);
    const double detuning = sign * 1.0;
    const double n_target = 100.0;
    const double shift = detuning - sys.omega_n() * sys.alpha() * n_target;
    const double pump = std::sqrt(n_target * (sys.kappa() * sys.kappa() + shift * shift));
    const DriveAmplitudes drive{pump, 1e-3 * pump, detuning, detuning};
    const CrosscheckReport r = crosscheck(sys, drive);
    const bool ok = r.valid && r.error_a_plus < 0.01;
    return {std::string("time-domain a_plus within 1% (") + (sign > 0 ? "red" : "blue") + " sideband)",
            ok, "a_plus error " + describe(r.error_a_plus) + ", residual " + describe(r.measured.residual)};
}

}  // namespace

std::vector<SelftestCheck> run_selftest(std::ostream& log) {
    using Check = SelftestCheck (*)();
    const Check checks[] = {
        bare_cavity_unitarity,
        bare_cavity_delay,
        bare_cavity_sideband,
        cubic_oracle,
        closed_form_vs_linear_system,
        [] { return scaled_crosscheck(+1.0); },
        [] { return scaled_crosscheck(-1.0); },
    };
    std::vector<SelftestCheck> results;
    for (Check check : checks) {
        SelftestCheck result;
        try {
            result = check();
        } catch (const Error& e) {
            result = {"(check raised)", false, e.what()};
        }
        log << (result.passed ? "PASS  " : "FAIL  ") << result.name << "  [" << result.detail << "]\n";
        results.push_back(std::move(result));
    }
    return results;
}

}  // namespace optomech
