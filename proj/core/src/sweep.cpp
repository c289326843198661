#include "optomech/sweep.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "optomech/error.hpp"
#include "optomech/format.hpp"

namespace optomech {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNanoWatt = 1e-9;

SweepResult start_result(const RunConfig& run) {
    SweepResult result;
    result.metadata.kind = run.sweep.kind;
    result.metadata.convention = run.sweep.convention;
    result.metadata.outputs = run.sweep.outputs;
    result.metadata.config_text = to_config_text(run.source);
    return result;
}

void mark_failed(SweepRow& row, const Error& e) {
    row.status = std::string(to_string(e.kind())) + ": " + e.what();
    row.magnitude = kNaN;
    row.phase = kNaN;
    row.a_plus = {kNaN, kNaN};
    row.group_delay.reset();
}

void unwrap_rows(std::vector<SweepRow>& rows) {
    std::vector<double> phase;
    for (const auto& row : rows) {
        if (row.ok()) phase.push_back(row.phase);
    }
    unwrap_phase(phase);
    std::size_t k = 0;
    for (auto& row : rows) {
        if (row.ok()) row.phase = phase[k++];
    }
}

}  // namespace

SweepResult run_detuning_sweep(const RunConfig& run) {
    SweepResult result = start_result(run);
    const SystemParams& sys = run.system;

    const double step_hz = (run.sweep.stop - run.sweep.start) / static_cast<double>(run.sweep.count - 1);
    if (kTwoPi * step_hz > sys.kappa() / 50.0) {
        std::ostringstream msg;
        msg << "grid step " << format_double(step_hz) << " Hz exceeds kappa/50; "
            << "phase unwrapping may miss branch jumps";
        result.metadata.warnings.push_back(msg.str());
    }

    // Pump-only quantities do not depend on the probe frequency.
    DriveParams pump_only = run.drive;
    pump_only.probe_detuning = pump_only.pump_detuning;
    const DriveAmplitudes pump_drive = resolve_drive(sys, pump_only);
    const SteadyState state = steady_state(sys, pump_drive);

    const std::vector<double> grid = run.sweep.grid();
    result.rows.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SweepRow& row = result.rows[i];
        row.value = grid[i];
        row.n_p = state.n_p();
        row.branch = state.selected;
        try {
            DriveParams drive = run.drive;
            drive.probe_detuning = kTwoPi * grid[i] + drive.pump_detuning;
            const DriveAmplitudes amplitudes = resolve_drive(sys, drive);
            const ProbeResponse response = evaluate_probe(sys, amplitudes, state, run.sweep.convention);
            row.magnitude = response.magnitude;
            row.phase = response.phase;
            row.a_plus = response.a_plus;
        } catch (const Error& e) {
            mark_failed(row, e);
        }
    }

    unwrap_rows(result.rows);

    // d phi / d omega_r on the grid; central inside, one-sided at the ends.
    auto& rows = result.rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].ok()) continue;
        const std::size_t lo = (i > 0 && rows[i - 1].ok()) ? i - 1 : i;
        const std::size_t hi = (i + 1 < rows.size() && rows[i + 1].ok()) ? i + 1 : i;
        if (lo == hi) continue;
        rows[i].group_delay =
            (rows[hi].phase - rows[lo].phase) / (kTwoPi * (rows[hi].value - rows[lo].value));
    }
    return result;
}

SweepResult run_power_sweep(const RunConfig& run) {
    SweepResult result = start_result(run);
    const SystemParams& sys = run.system;
    BranchTracker tracker;

    const std::vector<double> grid = run.sweep.grid();
    result.rows.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SweepRow& row = result.rows[i];
        row.value = grid[i];
        row.n_p = kNaN;
        try {
            DriveParams drive = run.drive;
            drive.pump_power_w = grid[i] * kNanoWatt;
            drive.probe_detuning = drive.pump_detuning;  // omega_r = omega_c
            const DriveAmplitudes amplitudes = resolve_drive(sys, drive);
            const BranchTracker::Step step = tracker.advance(sys, amplitudes);
            row.n_p = step.state.n_p();
            row.branch = step.state.selected;
            row.fold = step.fold;

            const ProbeResponse response = evaluate_probe(sys, amplitudes, step.state, run.sweep.convention);
            row.magnitude = response.magnitude;
            row.phase = response.phase;
            row.a_plus = response.a_plus;
            row.group_delay =
                group_delay_at(sys, amplitudes, row.n_p, run.sweep.convention).seconds;
        } catch (const Error& e) {
            mark_failed(row, e);
        }
    }
    unwrap_rows(result.rows);
    return result;
}

SweepResult run_sweep(const RunConfig& run) {
    return run.sweep.kind == SweepKind::Detuning ? run_detuning_sweep(run) : run_power_sweep(run);
}

namespace {

bool has(const SweepMetadata& m, Column c) {
    for (Column o : m.outputs) {
        if (o == c) return true;
    }
    return false;
}

void emit_csv(const SweepResult& result, std::ostream& out) {
    const SweepMetadata& m = result.metadata;
    out << (m.kind == SweepKind::Detuning ? "detuning_hz" : "pump_power_nw");
    if (has(m, Column::NP)) out << ",n_p";
    out << ",branch,fold";
    if (has(m, Column::Magnitude)) out << ",magnitude";
    if (has(m, Column::Phase)) out << ",phase_rad";
    if (has(m, Column::GroupDelay)) out << ",group_delay_s";
    if (has(m, Column::APlus)) out << ",a_plus_re,a_plus_im";
    out << ",status\n";

    for (const SweepRow& row : result.rows) {
        out << format_double(row.value);
        if (has(m, Column::NP)) out << ',' << format_double(row.n_p);
        out << ',' << row.branch << ',' << (row.fold ? 1 : 0);
        if (has(m, Column::Magnitude)) out << ',' << format_double(row.magnitude);
        if (has(m, Column::Phase)) out << ',' << format_double(row.phase);
        if (has(m, Column::GroupDelay)) out << ',' << format_double(row.group_delay.value_or(kNaN));
        if (has(m, Column::APlus)) {
            out << ',' << format_double(row.a_plus.real()) << ',' << format_double(row.a_plus.imag());
        }
        // Status text may contain commas.
        std::string status = row.status;
        for (char& ch : status) {
            if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
        }
        out << ',' << status << '\n';
    }
}

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

double number_from(const nlohmann::json& j) {
    return j.is_null() ? kNaN : j.get<double>();
}

nlohmann::json to_json(const SweepResult& result) {
    const SweepMetadata& m = result.metadata;
    nlohmann::json meta;
    meta["tool_version"] = m.tool_version;
    meta["kind"] = to_string(m.kind);
    meta["convention"] = to_string(m.convention);
    meta["config"] = m.config_text;
    meta["warnings"] = m.warnings;
    nlohmann::json outputs = nlohmann::json::array();
    for (Column c : m.outputs) outputs.push_back(to_string(c));
    meta["outputs"] = outputs;

    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& row : result.rows) {
        nlohmann::json r;
        r["value"] = number_or_null(row.value);
        r["branch"] = row.branch;
        r["fold"] = row.fold;
        r["status"] = row.status;
        if (has(m, Column::NP)) r["n_p"] = number_or_null(row.n_p);
        if (has(m, Column::Magnitude)) r["magnitude"] = number_or_null(row.magnitude);
        if (has(m, Column::Phase)) r["phase_rad"] = number_or_null(row.phase);
        if (has(m, Column::GroupDelay)) {
            r["group_delay_s"] = number_or_null(row.group_delay.value_or(kNaN));
        }
        if (has(m, Column::APlus)) {
            r["a_plus"] = {number_or_null(row.a_plus.real()), number_or_null(row.a_plus.imag())};
        }
        rows.push_back(std::move(r));
    }
    return {{"metadata", meta}, {"rows", rows}};
}

}  // namespace

void emit(const SweepResult& result, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::Csv) {
        emit_csv(result, out);
    } else {
        out << to_json(result).dump(2) << '\n';
    }
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "failed writing sweep output");
}

std::string emit_to_string(const SweepResult& result, OutputFormat format) {
    std::ostringstream out;
    emit(result, format, out);
    return out.str();
}

SweepResult parse_result_json(const std::string& text) {
    SweepResult result;
    try {
        const nlohmann::json doc = nlohmann::json::parse(text);
        const nlohmann::json& meta = doc.at("metadata");
        SweepMetadata& m = result.metadata;
        m.tool_version = meta.at("tool_version").get<std::string>();
        m.kind = meta.at("kind").get<std::string>() == "power" ? SweepKind::Power : SweepKind::Detuning;
        m.convention = meta.at("convention").get<std::string>() == "literal"
                           ? TransmissionConvention::PaperLiteral
                           : TransmissionConvention::FluxNormalized;
        m.config_text = meta.at("config").get<std::string>();
        m.warnings = meta.at("warnings").get<std::vector<std::string>>();
        // Column names are validated by the config parser.
        Config scratch;
        std::string list;
        for (const auto& name : meta.at("outputs")) list += (list.empty() ? "" : ",") + name.get<std::string>();
        if (!list.empty()) apply_override(scratch, "outputs=" + list);
        m.outputs = list.empty() ? std::vector<Column>{} : scratch.outputs;

        for (const auto& r : doc.at("rows")) {
            SweepRow row;
            row.value = number_from(r.at("value"));
            row.branch = r.at("branch").get<std::size_t>();
            row.fold = r.at("fold").get<bool>();
            row.status = r.at("status").get<std::string>();
            if (r.contains("n_p")) row.n_p = number_from(r["n_p"]);
            if (r.contains("magnitude")) row.magnitude = number_from(r["magnitude"]);
            if (r.contains("phase_rad")) row.phase = number_from(r["phase_rad"]);
            if (r.contains("group_delay_s") && !r["group_delay_s"].is_null()) {
                row.group_delay = r["group_delay_s"].get<double>();
            }
            if (r.contains("a_plus")) {
                row.a_plus = {number_from(r["a_plus"].at(0)), number_from(r["a_plus"].at(1))};
            }
            result.rows.push_back(std::move(row));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Io, std::string("malformed sweep JSON: ") + e.what());
    }
    return result;
}

}  // namespace optomech
