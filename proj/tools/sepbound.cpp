// sepbound: separation-loss bounds and figure sweeps for source broadcasting
// over degraded broadcast channels.
//
// Exit codes: 0 success, 2 invalid configuration or profile, 3 I/O failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sepbound/experiment.hpp"
#include "sepbound/report.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sepbound::IoError("cannot read config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    using namespace sepbound;

    CLI::App app{"Separation-loss bounds and sweeps for broadcasting a successively refinable "
                 "source over a degraded broadcast channel"};
    app.set_version_flag("--version", kToolVersion);

    std::string command_text;
    std::vector<double> rates, capacities, noises, noise_ratios, snr_db;
    std::vector<int> receivers;
    double power = 0, capacity_ratio = 0, geo_mean_bits = 0;
    std::string config_path, out_path;
    bool svg = false;
    unsigned jobs = 1;

    app.add_option("command", command_text, "bounds | gap | fig3 | fig4 | fig5 | sweep");
    auto* o_rates = app.add_option("--rates", rates, "R_1,...,R_T (non-increasing, bits/symbol)")
                        ->delimiter(',');
    auto* o_caps = app.add_option("--capacities", capacities, "C_1,...,C_T (bits/channel use)")
                       ->delimiter(',');
    auto* o_noises = app.add_option("--noises", noises, "N_1,...,N_T (non-decreasing)")->delimiter(',');
    auto* o_power = app.add_option("--power", power, "transmit power P");
    auto* o_snr = app.add_option("--snr-db", snr_db, "start,stop,step in dB")
                      ->delimiter(',')
                      ->expected(3);
    auto* o_ratios = app.add_option("--noise-ratios", noise_ratios, "N_1/N_2 values in (0, 1]")
                         ->delimiter(',');
    auto* o_recv = app.add_option("--receivers", receivers, "receiver counts, each >= 2")
                       ->delimiter(',');
    auto* o_cratio = app.add_option("--capacity-ratio", capacity_ratio, "C_max/C_min (= R_max/R_min)");
    auto* o_geo = app.add_option("--geo-mean-bits", geo_mean_bits, "geometric mean of C_t, bits");
    app.add_option("--config", config_path, "JSON config document; flags override it");
    app.add_option("--out", out_path, "CSV output path (default: standard output)");
    app.add_flag("--svg", svg, "also write one SVG chart per value column (requires --out)");
    app.add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    try {
        std::optional<Command> command;
        if (!command_text.empty()) {
            command = parse_command(command_text);
            if (!command) throw ConfigError("unknown command '" + command_text + "'");
        }

        ExperimentConfig config;
        if (!config_path.empty()) {
            config = config_from_json(read_file(config_path), command);
        } else if (!command) {
            throw ConfigError("no command given");
        } else {
            config.command = *command;
        }

        ExperimentConfig flags;
        flags.command = config.command;
        if (o_rates->count()) flags.rates = rates;
        if (o_caps->count()) flags.capacities = capacities;
        if (o_noises->count()) flags.noises = noises;
        if (o_power->count()) flags.power = power;
        if (o_snr->count()) flags.snr_db_range = SnrRange{snr_db[0], snr_db[1], snr_db[2]};
        if (o_ratios->count()) flags.noise_ratios = noise_ratios;
        if (o_recv->count()) flags.receiver_counts = receivers;
        if (o_cratio->count()) flags.capacity_ratio = capacity_ratio;
        if (o_geo->count()) flags.geometric_mean_bits = geo_mean_bits;
        flags.output_path = out_path;
        flags.emit_svg = svg;
        flags.jobs = jobs;
        config = overlay(std::move(config), flags);

        if (config.emit_svg && config.output_path.empty()) {
            throw ConfigError("--svg requires --out");
        }

        const SweepTable table = run(config);
        if (config.output_path.empty()) {
            write_csv(table, std::cout);
            std::cout.flush();
            if (!std::cout) throw IoError("failed writing to standard output");
        } else {
            emit(table, config.output_path, config.emit_svg);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
