#pragma once

// Line-oriented `key = value` run configuration. Missing keys fall back to
// the reference device and the red-sideband, 8 nW working point.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optomech/linear_response.hpp"
#include "optomech/params.hpp"

namespace optomech {

enum class SweepKind { Detuning, Power };

enum class Column { NP, Magnitude, Phase, GroupDelay, APlus };

struct PumpDetuning {
    enum class Mode { PlusOmegaN, MinusOmegaN, Hertz };
    Mode mode = Mode::PlusOmegaN;
    double hz = 0.0;  // used when mode == Hertz
};

/// Raw configuration values in user units (GHz, MHz, kHz, Hz, nW).
struct Config {
    double f_cavity_ghz = 7.5;
    double f_mech_mhz = 6.3;
    double kappa_khz = 600.0;
    double lambda_hz = 250.0;
    LambdaUnit lambda_unit = LambdaUnit::RadPerSecond;
    double q_mech = 1e6;
    double pump_nw = 8.0;
    double probe_nw = 1e-3;
    PumpDetuning pump_detuning;
    SweepKind kind = SweepKind::Detuning;
    // Unset grid fields take kind-dependent defaults: detuning +-3 kappa in
    // Hz with 3601 points, power 0.5..10 nW with 20 points.
    std::optional<double> start;
    std::optional<double> stop;
    std::optional<long> count;
    bool reverse = false;
    TransmissionConvention convention = TransmissionConvention::FluxNormalized;
    std::vector<Column> outputs{Column::NP, Column::Magnitude, Column::Phase, Column::GroupDelay,
                                Column::APlus};
};

struct SweepSpec {
    SweepKind kind = SweepKind::Detuning;
    double start = 0.0;  // Hz (detuning) or nW (power)
    double stop = 0.0;
    long count = 2;
    bool reverse = false;
    TransmissionConvention convention = TransmissionConvention::FluxNormalized;
    std::vector<Column> outputs;

    [[nodiscard]] bool wants(Column c) const;
    /// Grid values in user units, in evaluation order.
    [[nodiscard]] std::vector<double> grid() const;
};

struct RunConfig {
    Config source;
    SystemParams system;
    DriveParams drive;  // template; the swept field is overwritten per point
    SweepSpec sweep;
};

/// Parses configuration text. Throws Error(Config) with the 1-based line
/// number for syntax errors, unknown keys and out-of-range values.
Config parse_config(std::string_view text);

/// Applies one `key=value` (or `key = value`) override.
void apply_override(Config& config, std::string_view assignment);

/// Validates cross-field constraints and converts to library types.
RunConfig resolve_config(const Config& config);

/// Canonical text that parses back to an identical Config.
std::string to_config_text(const Config& config);

const char* to_string(SweepKind kind) noexcept;
const char* to_string(TransmissionConvention convention) noexcept;
const char* to_string(Column column) noexcept;

}  // namespace optomech
