#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "optomech/error.hpp"
#include "optomech/linear_response.hpp"
#include "optomech/timedomain.hpp"
#include "test_support.hpp"

using namespace optomech;
using testing::rel_diff;
using testing::scaled_system;

namespace {

Trajectory synthetic(double delta, double dt, std::size_t samples, cplx c0, cplx cp, cplx cm) {
    Trajectory traj;
    traj.dt = dt;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) * dt;
        traj.t.push_back(t);
        traj.a.push_back(c0 + cp * std::polar(1.0, -delta * t) + cm * std::polar(1.0, delta * t));
        traj.q.push_back(0.0);
        traj.q_dot.push_back(0.0);
    }
    return traj;
}

}  // namespace

TEST_SUITE("timedomain") {

TEST_CASE("bare cavity settles to the analytic steady state") {
    const SystemParams sys = scaled_system(0.0);
    const DriveAmplitudes drive{0.7, 0.0, 1.0, 0.0};
    const OscillatorState end = integrate_final(sys, drive, {}, 15.0 / sys.kappa(), 0.02);
    const cplx expected = drive.pump / cplx(sys.kappa(), drive.pump_detuning);
    CHECK(rel_diff(end.a, expected) < 1e-6);
}

TEST_CASE("free decay") {
    const SystemParams sys = scaled_system(0.0);
    const DriveAmplitudes drive{0.0, 0.0, 0.8, 0.0};
    const Trajectory traj = integrate(sys, drive, {cplx(1.0), 0.0, 0.0}, 40.0, 0.005);
    for (std::size_t i = 0; i < traj.size(); i += 97) {
        CHECK(std::abs(traj.a[i]) == doctest::Approx(std::exp(-sys.kappa() * traj.t[i])).epsilon(1e-8));
    }
}

TEST_CASE("bare cavity probe response matches the closed form") {
    const SystemParams sys = scaled_system(0.0);
    const double detuning_r = 0.05;
    const DriveAmplitudes drive{0.0, 1e-3, 1.0, 1.0 + detuning_r};
    const double period = kTwoPi / drive.probe_detuning;
    const double dt = period / 128;
    const Trajectory traj = integrate(sys, drive, {}, 200.0 * period, dt);
    const DemodulationResult d = demodulate(traj, drive.probe_detuning, 16);
    const cplx expected = drive.probe / cplx(sys.kappa(), -detuning_r);
    CHECK(rel_diff(d.a_plus, expected) < 1e-6);
    CHECK(std::abs(d.a_minus) < 1e-9 * std::abs(expected));
    CHECK(d.residual < 1e-6);
}

TEST_CASE("RK4 converges at fourth order") {
    const SystemParams sys = scaled_system(0.0);
    const DriveAmplitudes drive{0.5, 0.0, 0.9, 0.0};
    const double t_end = 20.0, dt = 0.1;
    const cplx ref = integrate_final(sys, drive, {}, t_end, dt / 4).a;
    const double e1 = std::abs(integrate_final(sys, drive, {}, t_end, dt).a - ref);
    const double e2 = std::abs(integrate_final(sys, drive, {}, t_end, dt / 2).a - ref);
    const double factor = e1 / e2;
    CHECK(factor >= 12.0);
    CHECK(factor <= 20.0);
}

TEST_CASE("integration guards") {
    const SystemParams sys = scaled_system();
    const DriveAmplitudes drive{0.5, 0.0, 1.0, 1.0};
    CHECK_THROWS_AS(integrate(sys, drive, {}, 10.0, 0.2), Error);
    try {
        integrate(sys, drive, {cplx(1e200), 0.0, 0.0}, 10.0, 0.01);
        FAIL("expected divergence");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Divergence);
        CHECK(std::string(e.what()).find("last finite time") != std::string::npos);
    }
    const Trajectory traj = integrate(sys, drive, {}, 1.0, 0.01);
    CHECK(traj.size() == 101);
    CHECK(traj.t.back() == doctest::Approx(1.0));
}

TEST_CASE("demodulation of synthetic tones") {
    const double delta = 0.8, dt = kTwoPi / delta / 50;
    SUBCASE("dc plus probe tone") {
        const DemodulationResult d = demodulate(synthetic(delta, dt, 2000, 3.0, 2.0, 0.0), delta, 16);
        CHECK(std::abs(d.a0 - 3.0) < 1e-12);
        CHECK(std::abs(d.a_plus - 2.0) < 1e-12);
        CHECK(std::abs(d.a_minus) < 1e-12);
        CHECK(d.residual < 1e-12);
    }
    SUBCASE("mixing tone only") {
        const DemodulationResult d = demodulate(synthetic(delta, dt, 2000, 0.0, 0.0, cplx(0, 1)), delta, 16);
        CHECK(std::abs(d.a_minus - cplx(0, 1)) < 1e-12);
        CHECK(std::abs(d.a0) < 1e-12);
        CHECK(std::abs(d.a_plus) < 1e-12);
    }
    SUBCASE("random three-tone signals") {
        std::mt19937_64 rng(3);
        std::normal_distribution<double> g;
        std::uniform_int_distribution<int> periods(5, 40);
        for (int i = 0; i < 200; ++i) {
            const double d = (i % 2 ? 1.0 : -1.0) * testing::log_uniform(rng, 0.05, 20.0);
            const double step = kTwoPi / std::abs(d) / 32;
            const cplx c0{g(rng), g(rng)}, cp{g(rng), g(rng)}, cm{g(rng), g(rng)};
            const int k = periods(rng);
            const DemodulationResult r =
                demodulate(synthetic(d, step, static_cast<std::size_t>(32 * k + 100), c0, cp, cm), d, k);
            CHECK(std::abs(r.a0 - c0) < 1e-10);
            CHECK(std::abs(r.a_plus - cp) < 1e-10);
            CHECK(std::abs(r.a_minus - cm) < 1e-10);
        }
    }
    SUBCASE("window errors") {
        const Trajectory traj = synthetic(delta, dt, 2000, 1.0, 1.0, 0.0);
        auto kind_of = [&](auto&& fn) {
            try {
                fn();
            } catch (const Error& e) {
                return e.kind();
            }
            return ErrorKind::Io;
        };
        CHECK(kind_of([&] { demodulate(traj, delta, 4); }) == ErrorKind::Windowing);
        CHECK(kind_of([&] { demodulate(traj, delta, 60); }) == ErrorKind::Windowing);
        CHECK(kind_of([&] { demodulate(traj, delta * 1.01, 16); }) == ErrorKind::Windowing);
    }
}

TEST_CASE("crosscheck") {
    SUBCASE("bare cavity is exact") {
        const SystemParams sys = scaled_system(0.0);
        const DriveAmplitudes drive{0.5, 5e-4, 1.0, 1.03};
        const CrosscheckReport r = crosscheck(sys, drive);
        CHECK(r.valid);
        CHECK(r.error_a0 < 1e-6);
        CHECK(r.error_a_plus < 1e-6);
        CHECK(r.error_a_minus < 1e-6);
    }
    SUBCASE("moderate coupling on the red sideband") {
        const SystemParams sys = scaled_system(1e-3);
        const double pump = testing::pump_for_photons(sys, 1.0, 225.0);
        const CrosscheckReport r = crosscheck(sys, {pump, 1e-3 * pump, 1.0, 1.0});
        CHECK(r.valid);
        CHECK(r.error_a_plus < 0.01);
        CHECK(r.error_a0 < 1e-3);
        CHECK(r.measured.residual < 0.01);
    }
    SUBCASE("strong probe is flagged") {
        const SystemParams sys = scaled_system(1e-3);
        const double pump = testing::pump_for_photons(sys, 1.0, 100.0);
        const CrosscheckReport r = crosscheck(sys, {pump, 0.1 * pump, 1.0, 1.0});
        CHECK_FALSE(r.small_probe);
        CHECK_FALSE(r.valid);
    }
}

TEST_CASE("trajectory csv") {
    const SystemParams sys = scaled_system();
    const Trajectory traj = integrate(sys, {0.1, 0.0, 1.0, 1.0}, {}, 0.05, 0.01);
    std::ostringstream out;
    write_trajectory_csv(traj, out);
    const std::string text = out.str();
    CHECK(text.rfind("t_s,re_a,im_a,q,q_dot\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 7);
}

}
