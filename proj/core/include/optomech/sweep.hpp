#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "optomech/config.hpp"

namespace optomech {

inline constexpr const char* kToolVersion = "0.1.0";

struct SweepRow {
    double value = 0.0;  // Hz (detuning sweep) or nW (power sweep)
    double n_p = 0.0;
    std::size_t branch = 0;
    bool fold = false;
    double magnitude = 0.0;
    double phase = 0.0;
    std::optional<double> group_delay;
    cplx a_plus;
    std::string status = "ok";

    [[nodiscard]] bool ok() const { return status == "ok"; }
};

struct SweepMetadata {
    std::string tool_version = kToolVersion;
    SweepKind kind = SweepKind::Detuning;
    TransmissionConvention convention = TransmissionConvention::FluxNormalized;
    std::vector<Column> outputs;
    std::string config_text;  // canonical echo; parse_config() reproduces the run
    std::vector<std::string> warnings;
};

struct SweepResult {
    SweepMetadata metadata;
    std::vector<SweepRow> rows;
};

/// Probe-cavity detuning sweep at fixed pump. The steady state is computed
/// once; the phase is unwrapped and the group-delay column taken from its
/// grid derivative in a sequential pass after all points are evaluated.
SweepResult run_detuning_sweep(const RunConfig& run);

/// Pump-power sweep evaluated at omega_r = omega_c, chaining continuation
/// hints from one power to the next.
SweepResult run_power_sweep(const RunConfig& run);

SweepResult run_sweep(const RunConfig& run);

enum class OutputFormat { Csv, Json };

void emit(const SweepResult& result, OutputFormat format, std::ostream& out);
std::string emit_to_string(const SweepResult& result, OutputFormat format);

/// Reads back what emit(..., Json, ...) wrote.
SweepResult parse_result_json(const std::string& text);

}  // namespace optomech
