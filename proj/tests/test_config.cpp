#include <string>

#include "doctest.h"
#include "optomech/config.hpp"
#include "optomech/error.hpp"

using namespace optomech;

namespace {

std::string config_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Config);
        return e.what();
    }
    return {};
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("empty file gives the reference working point") {
    const RunConfig run = resolve_config(parse_config(""));
    CHECK(run.system.omega_c() == doctest::Approx(kTwoPi * 7.5e9));
    CHECK(run.system.omega_n() == doctest::Approx(kTwoPi * 6.3e6));
    CHECK(run.system.kappa() == doctest::Approx(kTwoPi * 6e5));
    CHECK(run.system.lambda() == 250.0);
    CHECK(run.system.gamma_n() == doctest::Approx(kTwoPi * 6.3));
    CHECK(run.drive.pump_power_w == doctest::Approx(8e-9));
    CHECK(run.drive.pump_detuning == run.system.omega_n());
    CHECK(run.sweep.kind == SweepKind::Detuning);
    CHECK(run.sweep.start == doctest::Approx(-1.8e6));
    CHECK(run.sweep.stop == doctest::Approx(1.8e6));
    CHECK(run.sweep.convention == TransmissionConvention::FluxNormalized);
}

TEST_CASE("keys, comments and aliases") {
    const Config c = parse_config(
        "# blue sideband\n"
        "pump_detuning = -omega_n   # symbolic\n"
        "\n"
        "  lambda_hz=250\n"
        "lambda_unit = cyclic\n"
        "sweep.kind = power\n"
        "sweep.count = 5\n"
        "convention = literal\n"
        "outputs = magnitude, group_delay\n");
    const RunConfig run = resolve_config(c);
    CHECK(run.drive.pump_detuning == -run.system.omega_n());
    CHECK(run.system.lambda() == doctest::Approx(kTwoPi * 250.0));
    CHECK(run.sweep.kind == SweepKind::Power);
    CHECK(run.sweep.start == 0.5);
    CHECK(run.sweep.stop == 10.0);
    CHECK(run.sweep.count == 5);
    CHECK(run.sweep.convention == TransmissionConvention::PaperLiteral);
    CHECK(run.sweep.wants(Column::GroupDelay));
    CHECK_FALSE(run.sweep.wants(Column::Phase));

    const RunConfig numeric = resolve_config(parse_config("pump_detuning = 1.5e6\n"));
    CHECK(numeric.drive.pump_detuning == doctest::Approx(kTwoPi * 1.5e6));
}

TEST_CASE("errors carry line numbers and key names") {
    const std::string range = config_error("f_mech_mhz = 6.3\nkappa_khz = -5\n");
    CHECK(range.find("line 2") != std::string::npos);
    CHECK(range.find("kappa_khz") != std::string::npos);
    CHECK(range.find("out of range") != std::string::npos);

    CHECK(config_error("bogus = 1\n").find("unknown key") != std::string::npos);
    CHECK(config_error("\n\nno equals sign\n").find("line 3") != std::string::npos);
    CHECK(config_error("q_mech = abc\n").find("q_mech") != std::string::npos);
    CHECK(config_error("sweep.count = 1\n").find("sweep.count") != std::string::npos);
    CHECK(config_error("sweep.count = 2.5\n").find("sweep.count") != std::string::npos);
    CHECK(config_error("outputs = phase, colour\n").find("colour") != std::string::npos);
    CHECK(config_error("pump_nw =\n").find("missing value") != std::string::npos);

    Config c = parse_config("sweep.start = 5\nsweep.stop = 1\n");
    CHECK_THROWS_AS(resolve_config(c), Error);
}

TEST_CASE("overrides") {
    Config c = parse_config("pump_nw = 8\n");
    apply_override(c, "pump_nw=4");
    apply_override(c, "pump_detuning = -omega_n");
    CHECK(c.pump_nw == 4.0);
    CHECK(c.pump_detuning.mode == PumpDetuning::Mode::MinusOmegaN);
    CHECK_THROWS_AS(apply_override(c, "nonsense=1"), Error);
    CHECK_THROWS_AS(apply_override(c, "pump_nw"), Error);
}

TEST_CASE("canonical text parses back to the same values") {
    Config c = parse_config(
        "f_cavity_ghz = 7.123456789012345\nkappa_khz = 612.5\nlambda_hz = 0.1\n"
        "pump_detuning = 123.456\nsweep.kind = power\nsweep.start = 0.1\nsweep.stop = 3\n"
        "sweep.count = 7\nsweep.reverse = true\noutputs = phase,n_p\n");
    const std::string text = to_config_text(c);
    const Config back = parse_config(text);
    CHECK(back.f_cavity_ghz == c.f_cavity_ghz);
    CHECK(back.kappa_khz == c.kappa_khz);
    CHECK(back.lambda_hz == c.lambda_hz);
    CHECK(back.pump_detuning.hz == c.pump_detuning.hz);
    CHECK(back.kind == c.kind);
    CHECK(back.start == c.start);
    CHECK(back.count == c.count);
    CHECK(back.reverse);
    CHECK(back.outputs == c.outputs);
    CHECK(to_config_text(back) == text);
}

TEST_CASE("grid") {
    SweepSpec spec;
    spec.start = -1.0;
    spec.stop = 2.0;
    spec.count = 4;
    CHECK(spec.grid() == std::vector<double>{-1.0, 0.0, 1.0, 2.0});
    spec.reverse = true;
    CHECK(spec.grid() == std::vector<double>{2.0, 1.0, 0.0, -1.0});
}

}
