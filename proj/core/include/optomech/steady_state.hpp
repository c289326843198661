#pragma once

// Pump-only steady state. The photon number n_p solves
//
//     n_p [kappa^2 + (Delta_p - omega_n alpha n_p)^2] = |E_p|^2
//
// which is cubic in n_p and can have three real roots (bistability).

#include <complex>
#include <optional>
#include <vector>

#include "optomech/params.hpp"

namespace optomech {

enum class Stability { Stable, Unstable };

/// Relative slope below which a root is treated as a turning point.
inline constexpr double kTurningPointTolerance = 1e-9;

/// Residual of the photon-number condition, left side minus |E_p|^2.
double photon_number_residual(const SystemParams& sys, const DriveAmplitudes& drive, double n_p);

/// d(left side)/d n_p at n_p.
double photon_number_slope(const SystemParams& sys, const DriveAmplitudes& drive, double n_p);

/// All distinct real nonnegative roots, ascending. Returns exactly {0} for
/// zero pump amplitude.
std::vector<double> photon_number_roots(const SystemParams& sys, const DriveAmplitudes& drive);

Stability classify_stability(const SystemParams& sys, const DriveAmplitudes& drive, double n_p);

/// Stable root closest to `hint` if given, otherwise the smallest stable
/// root. Throws DegenerateSolution if no root is stable.
std::size_t select_branch(const std::vector<double>& roots,
                          const std::vector<Stability>& stability,
                          std::optional<double> hint = std::nullopt);

struct SteadyState {
    std::vector<double> roots;
    std::vector<Stability> stability;
    std::size_t selected = 0;
    std::complex<double> a0;
    double q0 = 0.0;

    [[nodiscard]] double n_p() const { return roots.at(selected); }
    [[nodiscard]] bool bistable() const { return roots.size() == 3; }
};

SteadyState steady_state(const SystemParams& sys, const DriveAmplitudes& drive,
                         std::optional<double> hint = std::nullopt);

/// Chains continuation hints through a monotone sweep of pump settings and
/// flags folds, i.e. steps where the tracked branch vanished and the
/// selection jumped across the unstable middle root.
class BranchTracker {
public:
    struct Step {
        SteadyState state;
        bool fold = false;
    };

    Step advance(const SystemParams& sys, const DriveAmplitudes& drive);

    void reset() noexcept {
        hint_.reset();
        middle_.reset();
    }

private:
    std::optional<double> hint_;
    std::optional<double> middle_;  // unstable root of the previous step, if bistable
};

}  // namespace optomech
