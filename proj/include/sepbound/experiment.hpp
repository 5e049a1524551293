#pragma once

// Experiment configuration and the table-producing drivers behind the CLI.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sepbound/model.hpp"

namespace sepbound {

inline constexpr const char* kToolVersion = "1.0.0";

enum class Command { bounds, gap, fig3, fig4, fig5, sweep };

std::optional<Command> parse_command(const std::string& name);
const char* command_name(Command command);

struct SnrRange {
    double start = -30.0;
    double stop = 50.0;
    double step = 1.0;

    /// start, start + step, ... up to stop inclusive (within 1e-9 steps).
    std::vector<double> values() const;
};

/// Raised for configurations that are incomplete, carry fields the command
/// does not use, or hold out-of-domain values.
class ConfigError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

struct ExperimentConfig {
    Command command = Command::bounds;
    std::optional<std::vector<double>> rates;
    std::optional<std::vector<double>> capacities;
    std::optional<std::vector<double>> noises;
    std::optional<double> power;
    std::optional<SnrRange> snr_db_range;
    std::optional<std::vector<double>> noise_ratios;
    std::optional<std::vector<int>> receiver_counts;
    std::optional<double> capacity_ratio;
    std::optional<double> geometric_mean_bits;
    std::string output_path;
    bool emit_svg = false;
    unsigned jobs = 1;
};

/// Checks the field set against the command: throws ConfigError naming
/// every missing and every extra field.
void validate(const ExperimentConfig& config);

/// validate() and then fill command defaults (SNR -30..50 dB in 1 dB steps,
/// noise ratios 0.01/0.1/0.5/0.9, T = 2..64, span 8, geometric mean 1 bit,
/// power 1).
ExperimentConfig resolve(const ExperimentConfig& config);

/// JSON document form of a config; the inverse of config_from_json.
std::string config_to_json(const ExperimentConfig& config);
/// Parses a JSON document. `command` may be absent when supplied elsewhere.
ExperimentConfig config_from_json(const std::string& text,
                                  std::optional<Command> command = std::nullopt);
/// Copies every field set in `flags` over `base`.
ExperimentConfig overlay(ExperimentConfig base, const ExperimentConfig& flags);

struct SweepTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;
    /// Column that splits rows into chart series; empty for a single series.
    std::string series_column;

    /// Throws ValidationError unless every row has one finite value per
    /// header column.
    void check() const;
    std::size_t column(const std::string& name) const;
};

SweepTable run_bounds(const ExperimentConfig& config);
SweepTable run_gap(const ExperimentConfig& config);
SweepTable run_fig3(const ExperimentConfig& config);
SweepTable run_fig4(const ExperimentConfig& config);
SweepTable run_fig5(const ExperimentConfig& config);
SweepTable run_sweep(const ExperimentConfig& config);

/// Dispatches on config.command after resolve().
SweepTable run(const ExperimentConfig& config);

/// Capacities g * span^{1/2 - t/(T-1)}, t = 0..T-1: geometric, with ratio
/// `span` between the ends and geometric mean g.
CapacityProfile geometric_capacities(std::size_t receivers, double span, double geometric_mean);

}  // namespace sepbound
