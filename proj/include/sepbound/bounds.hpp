#pragma once

// Multiplicative loss factors of separation-based time-sharing relative to
// joint source-channel coding over a degraded broadcast channel.

#include <cstddef>
#include <string>

#include "sepbound/model.hpp"

namespace sepbound {

/// A dimensionless loss factor (always >= 1) tagged with the bound that
/// produced it and a digest of the inputs.
struct FactorReport {
    double factor = 1.0;
    std::string bound_name;
    std::string inputs_digest;
};

/// Factor T: serve each receiver in turn with a point-to-point code.
FactorReport naive_factor(std::size_t receiver_count);

/// 1 + sum_{t<T} (R_t - R_{t+1}) / R_t.
FactorReport refined_factor(const RateProfile& rates);

/// T - (T-1) (r_min / r_max)^{1/(T-1)}: the refined factor maximized over
/// all profiles inside [r_min, r_max].
FactorReport worst_case_factor(double r_min, double r_max, std::size_t receiver_count);

/// 1 + ln(r_max / r_min), the T -> infinity limit of worst_case_factor.
FactorReport asymptotic_factor(double r_min, double r_max);

/// Geometric profile from r_max down to r_min that attains worst_case_factor.
RateProfile maximizing_profile(double r_min, double r_max, std::size_t receiver_count);

/// Time-sharing channel uses per symbol over the joint-coding lower limit
/// max_t R_t / C_t.
FactorReport combined_factor(const RateProfile& rates, const CapacityProfile& capacities);

/// worst_case_factor evaluated with the larger of the rate and capacity
/// spans. Both ratios are max/min, so each is >= 1.
FactorReport worst_case_combined(double rate_ratio, double capacity_ratio,
                                 std::size_t receiver_count);

/// Short "key=[v1,v2,...]" rendering used in reports and CSV metadata.
std::string digest(const char* key, std::span<const double> values);

}  // namespace sepbound
