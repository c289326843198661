#include "optomech/steady_state.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "optomech/error.hpp"

namespace optomech {

namespace {

constexpr double kResidualFloor = 1e-300;
constexpr int kMaxPolishSteps = 8;

double slope_scale(const SystemParams& sys, const DriveAmplitudes& drive, double n_p) {
    const double kerr = sys.omega_n() * sys.alpha();
    const double d = drive.pump_detuning - kerr * n_p;
    return sys.kappa() * sys.kappa() + d * d + std::abs(2.0 * kerr * n_p * d);
}

double polish(const SystemParams& sys, const DriveAmplitudes& drive, double n) {
    double last_step = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kMaxPolishSteps; ++i) {
        const double f = photon_number_residual(sys, drive, n);
        const double df = photon_number_slope(sys, drive, n);
        if (f == 0.0 || df == 0.0) break;
        const double step = f / df;
        if (!(std::abs(step) < last_step)) break;
        n -= step;
        last_step = std::abs(step);
        if (last_step <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(n)) break;
    }
    return n;
}

// f(0) = -|E_p|^2 < 0 and f(|E_p|^2/kappa^2) >= 0, so a root is always
// bracketed. Only used if the eigenvalue route loses every root.
double bracketed_root(const SystemParams& sys, const DriveAmplitudes& drive) {
    double lo = 0.0;
    double hi = drive.pump * drive.pump / (sys.kappa() * sys.kappa());
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (photon_number_residual(sys, drive, mid) < 0.0 ? lo : hi) = mid;
    }
    return polish(sys, drive, 0.5 * (lo + hi));
}

}  // namespace

double photon_number_residual(const SystemParams& sys, const DriveAmplitudes& drive, double n_p) {
    const double d = drive.pump_detuning - sys.omega_n() * sys.alpha() * n_p;
    return n_p * (sys.kappa() * sys.kappa() + d * d) - drive.pump * drive.pump;
}

double photon_number_slope(const SystemParams& sys, const DriveAmplitudes& drive, double n_p) {
    const double kerr = sys.omega_n() * sys.alpha();
    const double d = drive.pump_detuning - kerr * n_p;
    return sys.kappa() * sys.kappa() + d * d - 2.0 * kerr * n_p * d;
}

std::vector<double> photon_number_roots(const SystemParams& sys, const DriveAmplitudes& drive) {
    const double e2 = drive.pump * drive.pump;
    if (e2 == 0.0) return {0.0};

    const double kappa2 = sys.kappa() * sys.kappa();
    const double detuning = drive.pump_detuning;
    const double base = kappa2 + detuning * detuning;
    const double kerr = sys.omega_n() * sys.alpha();
    if (kerr == 0.0) return {e2 / base};

    // Substitute n = s x with s = sqrt(base)/kerr. The cubic becomes monic
    // with O(1) middle coefficients:  x^3 - 2 D x^2 + x - c = 0.
    const double root_base = std::sqrt(base);
    const double scale = root_base / kerr;
    const double d_hat = detuning / root_base;
    const double c_hat = e2 / (base * scale);

    Eigen::Matrix3d companion;
    companion << 2.0 * d_hat, -1.0, c_hat,
                 1.0, 0.0, 0.0,
                 0.0, 1.0, 0.0;
    Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::DegenerateSolution, "companion-matrix eigensolver did not converge");
    }

    std::vector<double> roots;
    const auto& eig = solver.eigenvalues();
    for (int i = 0; i < 3; ++i) {
        const double re = eig[i].real();
        const double im = eig[i].imag();
        // Near-real pairs come from a tangency; keep them and let polishing decide.
        if (std::abs(im) > 1e-7 * std::max(1.0, std::abs(re))) continue;
        // A root near zero (weak Kerr term) can come back slightly negative;
        // polishing from the clamped start recovers it.
        roots.push_back(polish(sys, drive, std::max(re, 0.0) * scale));
    }
    std::sort(roots.begin(), roots.end());
    const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(a, b); };
    roots.erase(std::unique(roots.begin(), roots.end(), close), roots.end());
    std::erase_if(roots, [](double n) { return !(n >= 0.0); });

    if (roots.empty()) roots.push_back(bracketed_root(sys, drive));
    for (double n : roots) {
        if (!(std::abs(photon_number_residual(sys, drive, n)) <= 1e-10 * e2)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "photon-number root " << n << " misses the residual bound for |E_p|^2 = " << e2;
            throw Error(ErrorKind::DegenerateSolution, msg.str());
        }
    }
    return roots;
}

Stability classify_stability(const SystemParams& sys, const DriveAmplitudes& drive, double n_p) {
    const double slope = photon_number_slope(sys, drive, n_p);
    if (slope > kTurningPointTolerance * slope_scale(sys, drive, n_p)) return Stability::Stable;
    return Stability::Unstable;
}

std::size_t select_branch(const std::vector<double>& roots,
                          const std::vector<Stability>& stability,
                          std::optional<double> hint) {
    if (roots.size() != stability.size()) {
        throw Error(ErrorKind::InvalidParameter, "roots and stability flags differ in length");
    }
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (stability[i] != Stability::Stable) continue;
        if (!best) {
            best = i;
            if (!hint) break;  // roots are ascending
            continue;
        }
        if (std::abs(roots[i] - *hint) < std::abs(roots[*best] - *hint)) best = i;
    }
    if (!best) throw Error(ErrorKind::DegenerateSolution, "no stable photon-number root");
    return *best;
}

SteadyState steady_state(const SystemParams& sys, const DriveAmplitudes& drive,
                         std::optional<double> hint) {
    SteadyState out;
    out.roots = photon_number_roots(sys, drive);
    out.stability.reserve(out.roots.size());
    for (double n : out.roots) out.stability.push_back(classify_stability(sys, drive, n));
    out.selected = select_branch(out.roots, out.stability, hint);

    const double n_p = out.n_p();
    const double kerr = sys.omega_n() * sys.alpha();
    out.a0 = drive.pump / std::complex<double>(sys.kappa(), drive.pump_detuning - kerr * n_p);
    out.q0 = 2.0 * sys.lambda() * n_p / sys.omega_n();
    return out;
}

BranchTracker::Step BranchTracker::advance(const SystemParams& sys, const DriveAmplitudes& drive) {
    Step step;
    step.state = steady_state(sys, drive, hint_);
    const double n = step.state.n_p();

    if (hint_ && middle_ && !step.state.bistable()) {
        // The selected root ended up on the other side of where the unstable
        // branch was: the branch we were following has disappeared.
        step.fold = (*hint_ < *middle_) != (n < *middle_);
    }
    // Two distinct roots only happen at a tangency (merged double root).
    if (step.state.roots.size() == 2) step.fold = true;

    hint_ = n;
    middle_.reset();
    if (step.state.bistable()) middle_ = step.state.roots[1];
    return step;
}

}  // namespace optomech
