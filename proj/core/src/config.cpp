#include "optomech/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "optomech/error.hpp"
#include "optomech/format.hpp"

namespace optomech {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(std::string_view key, const std::string& why) {
    throw Error(ErrorKind::Config, std::string(key) + ": " + why);
}

double number(std::string_view key, std::string_view value) {
    try {
        const double v = parse_double(std::string(value));
        if (!std::isfinite(v)) fail(key, "value must be finite");
        return v;
    } catch (const Error&) {
        fail(key, "expected a number, got '" + std::string(value) + "'");
    }
}

double positive(std::string_view key, std::string_view value) {
    const double v = number(key, value);
    if (!(v > 0.0)) fail(key, "out of range, must be > 0");
    return v;
}

double nonnegative(std::string_view key, std::string_view value) {
    const double v = number(key, value);
    if (!(v >= 0.0)) fail(key, "out of range, must be >= 0");
    return v;
}

Column parse_column(std::string_view key, std::string_view name) {
    if (name == "n_p") return Column::NP;
    if (name == "magnitude") return Column::Magnitude;
    if (name == "phase") return Column::Phase;
    if (name == "group_delay") return Column::GroupDelay;
    if (name == "a_plus") return Column::APlus;
    fail(key, "unknown output column '" + std::string(name) + "'");
}

void assign(Config& c, std::string_view key, std::string_view value) {
    if (key == "f_cavity_ghz") {
        c.f_cavity_ghz = positive(key, value);
    } else if (key == "f_mech_mhz") {
        c.f_mech_mhz = positive(key, value);
    } else if (key == "kappa_khz") {
        c.kappa_khz = positive(key, value);
    } else if (key == "lambda_hz") {
        c.lambda_hz = nonnegative(key, value);
    } else if (key == "lambda_unit") {
        if (value == "rad_per_s") {
            c.lambda_unit = LambdaUnit::RadPerSecond;
        } else if (value == "cyclic") {
            c.lambda_unit = LambdaUnit::Cyclic;
        } else {
            fail(key, "expected rad_per_s or cyclic");
        }
    } else if (key == "q_mech") {
        c.q_mech = positive(key, value);
    } else if (key == "pump_nw") {
        c.pump_nw = nonnegative(key, value);
    } else if (key == "probe_nw") {
        c.probe_nw = nonnegative(key, value);
    } else if (key == "pump_detuning") {
        if (value == "+omega_n" || value == "omega_n") {
            c.pump_detuning = {PumpDetuning::Mode::PlusOmegaN, 0.0};
        } else if (value == "-omega_n") {
            c.pump_detuning = {PumpDetuning::Mode::MinusOmegaN, 0.0};
        } else {
            c.pump_detuning = {PumpDetuning::Mode::Hertz, number(key, value)};
        }
    } else if (key == "sweep.kind") {
        if (value == "detuning") {
            c.kind = SweepKind::Detuning;
        } else if (value == "power") {
            c.kind = SweepKind::Power;
        } else {
            fail(key, "expected detuning or power");
        }
    } else if (key == "sweep.start") {
        c.start = number(key, value);
    } else if (key == "sweep.stop") {
        c.stop = number(key, value);
    } else if (key == "sweep.count") {
        const double v = number(key, value);
        if (v < 2.0 || v != std::floor(v) || v > 1e8) fail(key, "out of range, must be an integer >= 2");
        c.count = static_cast<long>(v);
    } else if (key == "sweep.reverse") {
        if (value == "true") {
            c.reverse = true;
        } else if (value == "false") {
            c.reverse = false;
        } else {
            fail(key, "expected true or false");
        }
    } else if (key == "convention") {
        if (value == "flux" || value == "flux-normalized") {
            c.convention = TransmissionConvention::FluxNormalized;
        } else if (value == "literal" || value == "paper-literal") {
            c.convention = TransmissionConvention::PaperLiteral;
        } else {
            fail(key, "expected flux or literal");
        }
    } else if (key == "outputs") {
        std::vector<Column> columns;
        std::string_view rest = value;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = trim(rest.substr(0, comma));
            const Column col = parse_column(key, item);
            if (std::find(columns.begin(), columns.end(), col) == columns.end()) {
                columns.push_back(col);
            }
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        c.outputs = std::move(columns);
    } else {
        fail(key, "unknown key");
    }
}

void assign_line(Config& config, std::string_view line) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
        throw Error(ErrorKind::Config, "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error(ErrorKind::Config, "missing key before '='");
    if (value.empty()) fail(key, "missing value");
    assign(config, key, value);
}

}  // namespace

const char* to_string(SweepKind kind) noexcept {
    return kind == SweepKind::Detuning ? "detuning" : "power";
}

const char* to_string(TransmissionConvention convention) noexcept {
    return convention == TransmissionConvention::FluxNormalized ? "flux" : "literal";
}

const char* to_string(Column column) noexcept {
    switch (column) {
        case Column::NP: return "n_p";
        case Column::Magnitude: return "magnitude";
        case Column::Phase: return "phase";
        case Column::GroupDelay: return "group_delay";
        case Column::APlus: return "a_plus";
    }
    return "?";
}

bool SweepSpec::wants(Column c) const {
    return std::find(outputs.begin(), outputs.end(), c) != outputs.end();
}

std::vector<double> SweepSpec::grid() const {
    std::vector<double> values(static_cast<std::size_t>(count));
    const double span = stop - start;
    const double last = static_cast<double>(count - 1);
    for (long i = 0; i < count; ++i) {
        values[static_cast<std::size_t>(i)] =
            i == count - 1 ? stop : start + span * (static_cast<double>(i) / last);
    }
    if (reverse) std::reverse(values.begin(), values.end());
    return values;
}

Config parse_config(std::string_view text) {
    Config config;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto newline = text.find('\n');
        std::string_view line = text.substr(0, newline);
        text.remove_prefix(newline == std::string_view::npos ? text.size() : newline + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        try {
            assign_line(config, line);
        } catch (const Error& e) {
            throw Error(ErrorKind::Config, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return config;
}

void apply_override(Config& config, std::string_view assignment) {
    try {
        assign_line(config, trim(assignment));
    } catch (const Error& e) {
        throw Error(ErrorKind::Config, std::string("--set ") + std::string(assignment) + ": " + e.what());
    }
}

RunConfig resolve_config(const Config& c) {
    const SystemParams sys = [&] {
        try {
            return make_system_params(c.f_cavity_ghz * 1e9, c.f_mech_mhz * 1e6, c.kappa_khz * 1e3,
                                      c.lambda_hz, c.q_mech, c.lambda_unit);
        } catch (const Error& e) {
            throw Error(ErrorKind::Config, e.what());
        }
    }();

    DriveParams drive;
    drive.pump_power_w = c.pump_nw * 1e-9;
    drive.probe_power_w = c.probe_nw * 1e-9;
    switch (c.pump_detuning.mode) {
        case PumpDetuning::Mode::PlusOmegaN: drive.pump_detuning = sys.omega_n(); break;
        case PumpDetuning::Mode::MinusOmegaN: drive.pump_detuning = -sys.omega_n(); break;
        case PumpDetuning::Mode::Hertz: drive.pump_detuning = kTwoPi * c.pump_detuning.hz; break;
    }
    drive.probe_detuning = drive.pump_detuning;
    if (!(sys.omega_c() - drive.pump_detuning > 0.0)) {
        throw Error(ErrorKind::Config, "pump_detuning: out of range, pump frequency must stay > 0");
    }

    SweepSpec sweep;
    sweep.kind = c.kind;
    sweep.convention = c.convention;
    sweep.outputs = c.outputs;
    sweep.reverse = c.reverse;
    if (c.kind == SweepKind::Detuning) {
        const double three_kappa_hz = 3.0 * c.kappa_khz * 1e3;
        sweep.start = c.start.value_or(-three_kappa_hz);
        sweep.stop = c.stop.value_or(three_kappa_hz);
        sweep.count = c.count.value_or(3601);
    } else {
        sweep.start = c.start.value_or(0.5);
        sweep.stop = c.stop.value_or(10.0);
        sweep.count = c.count.value_or(20);
        if (sweep.start < 0.0) throw Error(ErrorKind::Config, "sweep.start: out of range, power must be >= 0");
    }
    if (!(sweep.start < sweep.stop)) {
        throw Error(ErrorKind::Config, "sweep.start must be < sweep.stop");
    }
    return {c, sys, drive, sweep};
}

std::string to_config_text(const Config& c) {
    std::ostringstream out;
    out << "f_cavity_ghz = " << format_double(c.f_cavity_ghz) << '\n'
        << "f_mech_mhz = " << format_double(c.f_mech_mhz) << '\n'
        << "kappa_khz = " << format_double(c.kappa_khz) << '\n'
        << "lambda_hz = " << format_double(c.lambda_hz) << '\n'
        << "lambda_unit = " << (c.lambda_unit == LambdaUnit::Cyclic ? "cyclic" : "rad_per_s") << '\n'
        << "q_mech = " << format_double(c.q_mech) << '\n'
        << "pump_nw = " << format_double(c.pump_nw) << '\n'
        << "probe_nw = " << format_double(c.probe_nw) << '\n';
    out << "pump_detuning = ";
    switch (c.pump_detuning.mode) {
        case PumpDetuning::Mode::PlusOmegaN: out << "+omega_n"; break;
        case PumpDetuning::Mode::MinusOmegaN: out << "-omega_n"; break;
        case PumpDetuning::Mode::Hertz: out << format_double(c.pump_detuning.hz); break;
    }
    out << '\n' << "sweep.kind = " << to_string(c.kind) << '\n';
    if (c.start) out << "sweep.start = " << format_double(*c.start) << '\n';
    if (c.stop) out << "sweep.stop = " << format_double(*c.stop) << '\n';
    if (c.count) out << "sweep.count = " << *c.count << '\n';
    out << "sweep.reverse = " << (c.reverse ? "true" : "false") << '\n'
        << "convention = " << to_string(c.convention) << '\n';
    out << "outputs = ";
    for (std::size_t i = 0; i < c.outputs.size(); ++i) {
        out << (i ? "," : "") << to_string(c.outputs[i]);
    }
    out << '\n';
    return out.str();
}

}  // namespace optomech
