#include "sepbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace sepbound {
namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void require_range(double r_min, double r_max) {
    if (!(r_min > 0.0) || !std::isfinite(r_max)) {
        throw ValidationError("range bounds must be positive and finite");
    }
    if (r_min > r_max) {
        throw ValidationError("r_min exceeds r_max");
    }
}

// T - (T-1) q^{1/(T-1)} written as 1 - (T-1) expm1(ln q / (T-1)) so that
// large T does not cancel catastrophically.
double geometric_factor(double ratio_min_over_max, std::size_t receiver_count) {
    if (receiver_count <= 1) return 1.0;
    const double steps = static_cast<double>(receiver_count - 1);
    return 1.0 - steps * std::expm1(std::log(ratio_min_over_max) / steps);
}

}  // namespace

std::string digest(const char* key, std::span<const double> values) {
    std::string out = std::string(key) + "=[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += num(values[i]);
    }
    return out + "]";
}

FactorReport naive_factor(std::size_t receiver_count) {
    if (receiver_count < 1) {
        throw ValidationError("receiver count must be at least 1");
    }
    return {static_cast<double>(receiver_count), "naive", "T=" + std::to_string(receiver_count)};
}

FactorReport refined_factor(const RateProfile& rates) {
    double factor = 1.0;
    for (std::size_t t = 0; t + 1 < rates.size(); ++t) {
        factor += (rates[t] - rates[t + 1]) / rates[t];
    }
    return {factor, "refined", digest("rates", rates.values())};
}

FactorReport worst_case_factor(double r_min, double r_max, std::size_t receiver_count) {
    require_range(r_min, r_max);
    if (receiver_count < 1) {
        throw ValidationError("receiver count must be at least 1");
    }
    return {geometric_factor(r_min / r_max, receiver_count), "worst_case",
            "r_min=" + num(r_min) + ",r_max=" + num(r_max) + ",T=" + std::to_string(receiver_count)};
}

FactorReport asymptotic_factor(double r_min, double r_max) {
    require_range(r_min, r_max);
    return {1.0 + std::log(r_max / r_min), "asymptotic",
            "r_min=" + num(r_min) + ",r_max=" + num(r_max)};
}

RateProfile maximizing_profile(double r_min, double r_max, std::size_t receiver_count) {
    require_range(r_min, r_max);
    if (receiver_count < 1) {
        throw ValidationError("receiver count must be at least 1");
    }
    if (receiver_count == 1) {
        return RateProfile::make({r_max});
    }
    const double steps = static_cast<double>(receiver_count - 1);
    const double ratio = r_min / r_max;
    std::vector<double> rates(receiver_count);
    rates.front() = r_max;
    for (std::size_t t = 1; t + 1 < receiver_count; ++t) {
        rates[t] = r_max * std::pow(ratio, static_cast<double>(t) / steps);
    }
    rates.back() = r_min;
    // pow rounding must not break monotonicity near a degenerate range
    for (std::size_t t = 1; t < receiver_count; ++t) {
        rates[t] = std::clamp(rates[t], r_min, rates[t - 1]);
    }
    return RateProfile::make(std::move(rates));
}

FactorReport combined_factor(const RateProfile& rates, const CapacityProfile& capacities) {
    if (rates.size() != capacities.size()) {
        throw ValidationError("rate and capacity profiles differ in length");
    }
    double uses = 0.0;
    double joint = 0.0;
    for (std::size_t t = 0; t < rates.size(); ++t) {
        uses += rates.increment(t) / capacities[t];
        joint = std::max(joint, rates[t] / capacities[t]);
    }
    return {uses / joint, "combined",
            digest("rates", rates.values()) + ";" + digest("capacities", capacities.values())};
}

FactorReport worst_case_combined(double rate_ratio, double capacity_ratio,
                                 std::size_t receiver_count) {
    if (!(rate_ratio >= 1.0) || !(capacity_ratio >= 1.0)) {
        throw ValidationError("span ratios must be at least 1");
    }
    if (receiver_count < 1) {
        throw ValidationError("receiver count must be at least 1");
    }
    const double span = std::max(rate_ratio, capacity_ratio);
    return {geometric_factor(1.0 / span, receiver_count), "worst_case_combined",
            "rate_ratio=" + num(rate_ratio) + ",capacity_ratio=" + num(capacity_ratio) +
                ",T=" + std::to_string(receiver_count)};
}

}  // namespace sepbound
