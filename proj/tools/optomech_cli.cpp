// Command-line front end: parameter sweeps and the built-in selftest.
//
//   optomech sweep --config run.cfg [--out result.csv] [--format csv|json] [--set key=value ...]
//   optomech selftest
//
// Exit codes: 0 success, 1 config error, 2 runtime error, 3 selftest failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "optomech/config.hpp"
#include "optomech/error.hpp"
#include "optomech/selftest.hpp"
#include "optomech/sweep.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitSelftest = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw optomech::Error(optomech::ErrorKind::Config, "cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

int run_sweep(const std::string& config_path, const std::string& out_path,
              const std::string& format_name, const std::vector<std::string>& overrides) {
    using optomech::Error;
    using optomech::ErrorKind;

    optomech::RunConfig run = [&] {
        optomech::Config config = optomech::parse_config(read_file(config_path));
        for (const auto& assignment : overrides) optomech::apply_override(config, assignment);
        return optomech::resolve_config(config);
    }();

    const auto format = format_name == "json" ? optomech::OutputFormat::Json : optomech::OutputFormat::Csv;
    const optomech::SweepResult result = optomech::run_sweep(run);
    for (const auto& warning : result.metadata.warnings) std::cerr << "warning: " << warning << '\n';

    if (out_path.empty() || out_path == "-") {
        optomech::emit(result, format, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error(ErrorKind::Io, "cannot open output file '" + out_path + "'");
        optomech::emit(result, format, out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pump-probe response of a nanomechanical resonator coupled to a microwave cavity"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format_name = "csv";
    std::vector<std::string> overrides;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a detuning or pump-power sweep");
    sweep->add_option("--config", config_path, "Configuration file (key = value lines)")->required();
    sweep->add_option("--out", out_path, "Output path (default: stdout)");
    sweep->add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--set", overrides, "Override a config key, e.g. --set pump_nw=4");

    CLI::App* selftest = app.add_subcommand("selftest", "Run analytic and time-domain self checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*sweep) return run_sweep(config_path, out_path, format_name, overrides);
        if (*selftest) {
            bool all = true;
            for (const auto& check : optomech::run_selftest(std::cout)) all = all && check.passed;
            return all ? 0 : kExitSelftest;
        }
    } catch (const optomech::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == optomech::ErrorKind::Config ? kExitConfig : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
