#include "sepbound/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "sepbound/awgn.hpp"
#include "sepbound/bounds.hpp"
#include "sepbound/parallel.hpp"
#include "sepbound/schemes.hpp"

namespace sepbound {
namespace {

using nlohmann::json;

constexpr const char* kRates = "rates";
constexpr const char* kCapacities = "capacities";
constexpr const char* kNoises = "noises";
constexpr const char* kPower = "power";
constexpr const char* kSnrDb = "snr_db";
constexpr const char* kNoiseRatios = "noise_ratios";
constexpr const char* kReceivers = "receivers";
constexpr const char* kCapacityRatio = "capacity_ratio";
constexpr const char* kGeoMeanBits = "geo_mean_bits";

struct FieldRule {
    std::set<std::string> required;
    std::set<std::string> optional;
};

FieldRule rule_for(Command command) {
    switch (command) {
        case Command::bounds: return {{kRates}, {kCapacities}};
        case Command::gap: return {{kNoises}, {kPower}};
        case Command::fig3:
        case Command::fig4: return {{}, {kSnrDb, kNoiseRatios}};
        case Command::fig5: return {{}, {kReceivers, kCapacityRatio, kGeoMeanBits, kPower}};
        case Command::sweep: return {{kRates, kNoises}, {kSnrDb}};
    }
    return {};
}

std::set<std::string> present_fields(const ExperimentConfig& c) {
    std::set<std::string> out;
    if (c.rates) out.insert(kRates);
    if (c.capacities) out.insert(kCapacities);
    if (c.noises) out.insert(kNoises);
    if (c.power) out.insert(kPower);
    if (c.snr_db_range) out.insert(kSnrDb);
    if (c.noise_ratios) out.insert(kNoiseRatios);
    if (c.receiver_counts) out.insert(kReceivers);
    if (c.capacity_ratio) out.insert(kCapacityRatio);
    if (c.geometric_mean_bits) out.insert(kGeoMeanBits);
    return out;
}

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::vector<double> resolved_snr(const ExperimentConfig& c) {
    return c.snr_db_range.value_or(SnrRange{}).values();
}

ExperimentConfig prepare(const ExperimentConfig& config, Command command) {
    ExperimentConfig c = config;
    c.command = command;
    return resolve(c);
}

SweepTable start_table(const ExperimentConfig& resolved, std::vector<std::string> header) {
    SweepTable table;
    table.header = std::move(header);
    table.metadata.emplace_back("command", command_name(resolved.command));
    table.metadata.emplace_back("config", config_to_json(resolved));
    table.metadata.emplace_back("tool_version", kToolVersion);
    return table;
}

// Two-receiver channel with P/N_1 = snr and N_1/N_2 = ratio.
AwgnBroadcast two_receiver_channel(double snr_db, double noise_ratio) {
    return AwgnBroadcast::make(db_to_linear(snr_db), {1.0, 1.0 / noise_ratio});
}

struct GridPoint {
    double snr_db;
    double noise_ratio;
};

std::vector<GridPoint> snr_by_ratio(const ExperimentConfig& c) {
    std::vector<GridPoint> grid;
    for (double ratio : *c.noise_ratios) {
        for (double snr : resolved_snr(c)) grid.push_back({snr, ratio});
    }
    return grid;
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
    for (Command c : {Command::bounds, Command::gap, Command::fig3, Command::fig4, Command::fig5,
                      Command::sweep}) {
        if (name == command_name(c)) return c;
    }
    return std::nullopt;
}

const char* command_name(Command command) {
    switch (command) {
        case Command::bounds: return "bounds";
        case Command::gap: return "gap";
        case Command::fig3: return "fig3";
        case Command::fig4: return "fig4";
        case Command::fig5: return "fig5";
        case Command::sweep: return "sweep";
    }
    return "?";
}

std::vector<double> SnrRange::values() const {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || !(step > 0.0) ||
        stop < start) {
        throw ConfigError("empty SNR range: need finite start <= stop and step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
    return out;
}

void validate(const ExperimentConfig& config) {
    const FieldRule rule = rule_for(config.command);
    const std::set<std::string> present = present_fields(config);
    std::vector<std::string> missing;
    std::vector<std::string> extra;
    for (const auto& f : rule.required) {
        if (!present.contains(f)) missing.push_back(f);
    }
    for (const auto& f : present) {
        if (!rule.required.contains(f) && !rule.optional.contains(f)) extra.push_back(f);
    }
    if (missing.empty() && extra.empty()) return;

    std::string msg = std::string(command_name(config.command)) + ":";
    if (!missing.empty()) msg += " missing fields [" + join(missing) + "]";
    if (!extra.empty()) msg += " extra fields [" + join(extra) + "]";
    throw ConfigError(msg);
}

ExperimentConfig resolve(const ExperimentConfig& config) {
    validate(config);
    ExperimentConfig c = config;
    if (c.jobs < 1) throw ConfigError("jobs must be at least 1");

    switch (c.command) {
        case Command::fig3:
        case Command::fig4:
            if (!c.snr_db_range) c.snr_db_range = SnrRange{};
            if (!c.noise_ratios) c.noise_ratios = std::vector<double>{0.01, 0.1, 0.5, 0.9};
            break;
        case Command::fig5:
            if (!c.receiver_counts) {
                std::vector<int> counts;
                for (int t = 2; t <= 64; ++t) counts.push_back(t);
                c.receiver_counts = counts;
            }
            if (!c.capacity_ratio) c.capacity_ratio = 8.0;
            if (!c.geometric_mean_bits) c.geometric_mean_bits = 1.0;
            if (!c.power) c.power = 1.0;
            break;
        case Command::gap:
            if (!c.power) c.power = 1.0;
            break;
        case Command::sweep:
            if (!c.snr_db_range) c.snr_db_range = SnrRange{};
            break;
        case Command::bounds: break;
    }

    if (c.snr_db_range) (void)c.snr_db_range->values();
    if (c.noise_ratios) {
        if (c.noise_ratios->empty()) throw ConfigError("noise_ratios must not be empty");
        for (double r : *c.noise_ratios) {
            if (!(r > 0.0 && r <= 1.0)) throw ConfigError("noise ratios must lie in (0, 1]");
        }
    }
    if (c.receiver_counts) {
        if (c.receiver_counts->empty()) throw ConfigError("receivers must not be empty");
        for (int t : *c.receiver_counts) {
            if (t < 2) throw ConfigError("receiver counts must be at least 2");
        }
    }
    if (c.power && !(*c.power > 0.0 && std::isfinite(*c.power))) {
        throw ConfigError("power must be positive and finite");
    }
    if (c.capacity_ratio && !(*c.capacity_ratio >= 1.0 && std::isfinite(*c.capacity_ratio))) {
        throw ConfigError("capacity_ratio must be at least 1");
    }
    if (c.geometric_mean_bits &&
        !(*c.geometric_mean_bits > 0.0 && std::isfinite(*c.geometric_mean_bits))) {
        throw ConfigError("geo_mean_bits must be positive");
    }
    return c;
}

std::string config_to_json(const ExperimentConfig& c) {
    json doc;
    doc["command"] = command_name(c.command);
    if (c.rates) doc[kRates] = *c.rates;
    if (c.capacities) doc[kCapacities] = *c.capacities;
    if (c.noises) doc[kNoises] = *c.noises;
    if (c.power) doc[kPower] = *c.power;
    if (c.snr_db_range) {
        doc[kSnrDb] = {c.snr_db_range->start, c.snr_db_range->stop, c.snr_db_range->step};
    }
    if (c.noise_ratios) doc[kNoiseRatios] = *c.noise_ratios;
    if (c.receiver_counts) doc[kReceivers] = *c.receiver_counts;
    if (c.capacity_ratio) doc[kCapacityRatio] = *c.capacity_ratio;
    if (c.geometric_mean_bits) doc[kGeoMeanBits] = *c.geometric_mean_bits;
    return doc.dump();
}

ExperimentConfig config_from_json(const std::string& text, std::optional<Command> command) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    ExperimentConfig c;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "command") {
                auto parsed = parse_command(value.get<std::string>());
                if (!parsed) throw ConfigError("unknown command '" + value.get<std::string>() + "'");
                c.command = *parsed;
                command = command.value_or(*parsed);
            } else if (key == kRates) {
                c.rates = value.get<std::vector<double>>();
            } else if (key == kCapacities) {
                c.capacities = value.get<std::vector<double>>();
            } else if (key == kNoises) {
                c.noises = value.get<std::vector<double>>();
            } else if (key == kPower) {
                c.power = value.get<double>();
            } else if (key == kSnrDb) {
                auto v = value.get<std::vector<double>>();
                if (v.size() != 3) throw ConfigError("snr_db needs [start, stop, step]");
                c.snr_db_range = SnrRange{v[0], v[1], v[2]};
            } else if (key == kNoiseRatios) {
                c.noise_ratios = value.get<std::vector<double>>();
            } else if (key == kReceivers) {
                c.receiver_counts = value.get<std::vector<int>>();
            } else if (key == kCapacityRatio) {
                c.capacity_ratio = value.get<double>();
            } else if (key == kGeoMeanBits) {
                c.geometric_mean_bits = value.get<double>();
            } else if (key == "out") {
                c.output_path = value.get<std::string>();
            } else if (key == "svg") {
                c.emit_svg = value.get<bool>();
            } else if (key == "jobs") {
                c.jobs = value.get<unsigned>();
            } else {
                throw ConfigError("unknown config field '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field has the wrong type: ") + e.what());
    }
    if (!command) throw ConfigError("config names no command");
    c.command = *command;
    return c;
}

ExperimentConfig overlay(ExperimentConfig base, const ExperimentConfig& flags) {
    base.command = flags.command;
    if (flags.rates) base.rates = flags.rates;
    if (flags.capacities) base.capacities = flags.capacities;
    if (flags.noises) base.noises = flags.noises;
    if (flags.power) base.power = flags.power;
    if (flags.snr_db_range) base.snr_db_range = flags.snr_db_range;
    if (flags.noise_ratios) base.noise_ratios = flags.noise_ratios;
    if (flags.receiver_counts) base.receiver_counts = flags.receiver_counts;
    if (flags.capacity_ratio) base.capacity_ratio = flags.capacity_ratio;
    if (flags.geometric_mean_bits) base.geometric_mean_bits = flags.geometric_mean_bits;
    if (!flags.output_path.empty()) base.output_path = flags.output_path;
    if (flags.emit_svg) base.emit_svg = true;
    if (flags.jobs != 1) base.jobs = flags.jobs;
    return base;
}

void SweepTable::check() const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != header.size()) {
            throw ValidationError("row " + std::to_string(r) + " is not rectangular", r);
        }
        for (double v : rows[r]) {
            if (!std::isfinite(v)) {
                throw ValidationError("row " + std::to_string(r) + " holds a non-finite value", r);
            }
        }
    }
}

std::size_t SweepTable::column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ValidationError("no column named '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

CapacityProfile geometric_capacities(std::size_t receivers, double span, double geometric_mean) {
    if (receivers < 1) throw ValidationError("receiver count must be at least 1");
    std::vector<double> c(receivers);
    if (receivers == 1) {
        c[0] = geometric_mean;
    } else {
        const double steps = static_cast<double>(receivers - 1);
        for (std::size_t t = 0; t < receivers; ++t) {
            c[t] = geometric_mean * std::pow(span, 0.5 - static_cast<double>(t) / steps);
        }
    }
    return CapacityProfile::make(std::move(c));
}

SweepTable run_bounds(const ExperimentConfig& config) {
    const ExperimentConfig c = prepare(config, Command::bounds);
    const RateProfile rates = RateProfile::make(*c.rates);
    const std::size_t t = rates.size();

    std::vector<std::string> header = {"T", "naive", "refined", "worst_case", "asymptotic"};
    std::vector<double> row = {static_cast<double>(t), naive_factor(t).factor,
                               refined_factor(rates).factor,
                               worst_case_factor(rates.back(), rates.front(), t).factor,
                               asymptotic_factor(rates.back(), rates.front()).factor};
    if (c.capacities) {
        const CapacityProfile caps = CapacityProfile::make(*c.capacities);
        header.insert(header.end(), {"combined", "worst_case_combined"});
        row.push_back(combined_factor(rates, caps).factor);
        row.push_back(worst_case_combined(rates.front() / rates.back(),
                                          caps.front() / caps.back(), t)
                          .factor);
    }
    SweepTable table = start_table(c, std::move(header));
    table.rows.push_back(std::move(row));
    return table;
}

SweepTable run_gap(const ExperimentConfig& config) {
    const ExperimentConfig c = prepare(config, Command::gap);
    const AwgnBroadcast channel = AwgnBroadcast::make(*c.power, *c.noises);
    const GapReport gap = thm4_gap(channel);
    SweepTable table = start_table(c, {"T", "power", "alpha_last", "gap_thm4_bits",
                                       "gap_uniform_backoff_bits", "corollary_log2T",
                                       "corollary_range_bits"});
    table.rows.push_back({static_cast<double>(channel.size()), channel.power(), gap.alpha_last,
                          gap.gap_bits, uniform_backoff_distance(channel), gap.corollary_t_bound,
                          gap.corollary_range_bound});
    table.metadata.emplace_back(
        "note", "gap_thm4_bits backs off the most degraded receiver only; "
                "gap_uniform_backoff_bits backs off every receiver equally");
    return table;
}

SweepTable run_fig3(const ExperimentConfig& config) {
    const ExperimentConfig c = prepare(config, Command::fig3);
    const std::vector<GridPoint> grid = snr_by_ratio(c);
    SweepTable table = start_table(
        c, {"snr_db", "noise_ratio", "ratio_time_sharing", "ratio_optimal_separation"});
    table.series_column = "noise_ratio";
    table.metadata.emplace_back("note",
                                "two receivers, N1 = 1, P/N1 = snr, source rates R_t = C_t; "
                                "ratios are relative to the joint-coding reference");
    table.rows = parallel_map(grid.size(), c.jobs, [&](std::size_t i) {
        const auto [snr_db, ratio] = grid[i];
        const AwgnBroadcast channel = two_receiver_channel(snr_db, ratio);
        const CapacityProfile caps = capacities_from_awgn(channel);
        const RateProfile rates = RateProfile::make({caps[0], caps[1]});
        const double joint = joint_reference_rate(rates, caps).rate;
        return std::vector<double>{snr_db, ratio, time_sharing_rate(rates, caps).rate / joint,
                                   optimal_separation_rate(rates, channel).rate / joint};
    });
    return table;
}

SweepTable run_fig4(const ExperimentConfig& config) {
    const ExperimentConfig c = prepare(config, Command::fig4);
    const std::vector<GridPoint> grid = snr_by_ratio(c);
    SweepTable table = start_table(c, {"snr_db", "noise_ratio", "gap_thm4_bits",
                                       "gap_uniform_backoff_bits", "corollary_log2T"});
    table.series_column = "noise_ratio";
    table.metadata.emplace_back(
        "note", "distance metric is not uniquely defined: gap_thm4_bits backs off the most "
                "degraded receiver only, gap_uniform_backoff_bits is the equal per-receiver "
                "(L-infinity) backoff");
    table.rows = parallel_map(grid.size(), c.jobs, [&](std::size_t i) {
        const auto [snr_db, ratio] = grid[i];
        const AwgnBroadcast channel = two_receiver_channel(snr_db, ratio);
        const GapReport gap = thm4_gap(channel);
        return std::vector<double>{snr_db, ratio, gap.gap_bits, uniform_backoff_distance(channel),
                                   gap.corollary_t_bound};
    });
    return table;
}

SweepTable run_fig5(const ExperimentConfig& config) {
    const ExperimentConfig c = prepare(config, Command::fig5);
    const std::vector<int>& counts = *c.receiver_counts;
    SweepTable table = start_table(
        c, {"T", "ratio_time_sharing", "ratio_optimal_separation", "ratio_two_dof"});
    table.metadata.emplace_back("note",
                                "geometric capacities with the given span and geometric mean, "
                                "noises from capacities at the given power, R_t = C_t");
    table.rows = parallel_map(counts.size(), c.jobs, [&](std::size_t i) {
        const auto t = static_cast<std::size_t>(counts[i]);
        const CapacityProfile caps = geometric_capacities(t, *c.capacity_ratio,
                                                          *c.geometric_mean_bits);
        const AwgnBroadcast channel = noises_from_capacities(caps, *c.power);
        const RateProfile rates = RateProfile::make({caps.values().begin(), caps.values().end()});
        const auto rel = relative_rates(rates, channel);
        return std::vector<double>{static_cast<double>(t), rel.at(label::kTimeSharing),
                                   rel.at(label::kOptimalSeparation), rel.at(label::kTwoDof)};
    });
    return table;
}

SweepTable run_sweep(const ExperimentConfig& config) {
    const ExperimentConfig c = prepare(config, Command::sweep);
    const RateProfile rates = RateProfile::make(*c.rates);
    // validates the noise profile's shape once up front
    const AwgnBroadcast shape = AwgnBroadcast::make(1.0, *c.noises);
    if (shape.size() != rates.size()) {
        throw ConfigError("rates and noises differ in receiver count");
    }
    std::vector<double> relative(shape.size());
    for (std::size_t t = 0; t < shape.size(); ++t) relative[t] = shape.noise(t) / shape.noise(0);

    const bool with_two_dof = rates.size() >= 2;
    std::vector<std::string> header = {"snr_db", "ratio_time_sharing", "ratio_optimal_separation"};
    if (with_two_dof) header.push_back("ratio_two_dof");
    header.insert(header.end(), {"gap_thm4_bits", "gap_uniform_backoff_bits"});
    SweepTable table = start_table(c, std::move(header));
    table.metadata.emplace_back("note", "noises rescaled so N1 = 1; P/N1 = snr");

    const std::vector<double> snr = resolved_snr(c);
    table.rows = parallel_map(snr.size(), c.jobs, [&](std::size_t i) {
        const AwgnBroadcast channel = AwgnBroadcast::make(db_to_linear(snr[i]), relative);
        const auto rel = relative_rates(rates, channel);
        std::vector<double> row = {snr[i], rel.at(label::kTimeSharing),
                                   rel.at(label::kOptimalSeparation)};
        if (with_two_dof) row.push_back(rel.at(label::kTwoDof));
        row.push_back(thm4_gap(channel).gap_bits);
        row.push_back(uniform_backoff_distance(channel));
        return row;
    });
    return table;
}

SweepTable run(const ExperimentConfig& config) {
    switch (config.command) {
        case Command::bounds: return run_bounds(config);
        case Command::gap: return run_gap(config);
        case Command::fig3: return run_fig3(config);
        case Command::fig4: return run_fig4(config);
        case Command::fig5: return run_fig5(config);
        case Command::sweep: return run_sweep(config);
    }
    throw ConfigError("unknown command");
}

}  // namespace sepbound
