#pragma once

// End-to-end source broadcasting schemes and the joint-coding reference.

#include <map>
#include <string>
#include <variant>

#include "sepbound/awgn.hpp"
#include "sepbound/model.hpp"

namespace sepbound {

namespace label {
inline constexpr const char* kJointReference = "joint_reference";
inline constexpr const char* kTimeSharing = "time_sharing";
inline constexpr const char* kOptimalSeparation = "optimal_separation";
inline constexpr const char* kTwoDof = "two_dof";
}  // namespace label

/// One x-axis position of a sweep with every scheme evaluated there.
struct SweepPoint {
    double snr_db = 0.0;
    std::map<std::string, std::variant<SchemeResult, GapReport>> results;
    std::string params_digest;
};

/// 1 / max_t(R_t / C_t): the rate at which every receiver simultaneously
/// sits at its point-to-point limit. An outer bound, not an achievable rate.
SchemeResult joint_reference_rate(const RateProfile& rates, const CapacityProfile& capacities);

/// Layered time-sharing: R_T / C_T + sum_{t<T} (R_t - R_{t+1}) / C_t
/// channel uses per source symbol.
SchemeResult time_sharing_rate(const RateProfile& rates, const CapacityProfile& capacities);

/// Largest r whose refinement messages r (R_t - R_{t+1}) fit in the
/// superposition region, with the witnessing allocation attached.
SchemeResult optimal_separation_rate(const RateProfile& rates, const AwgnBroadcast& channel);

/// Allocation whose first T-1 power shares are linear in t and sum to
/// `total`, with `tilt` in [0, 1] moving weight from the last of them
/// (tilt = 0) to the first (tilt = 1). The remainder 1 - total goes to the
/// most degraded receiver.
PowerAllocation linear_share_allocation(std::size_t receivers, double total, double tilt);

/// Rate carried by a fixed allocation: min over messages with a positive
/// increment of m_t / (R_t - R_{t+1}).
double carried_rate(const RateProfile& rates, const AwgnBroadcast& channel,
                    const PowerAllocation& allocation);

/// Best rate over linear_share_allocation, a two-parameter family.
SchemeResult two_dof_rate(const RateProfile& rates, const AwgnBroadcast& channel);

/// Every scheme's rate over joint_reference_rate on the channel's own
/// capacities. two_dof is omitted for a single receiver.
std::map<std::string, double> relative_rates(const RateProfile& rates,
                                             const AwgnBroadcast& channel);

}  // namespace sepbound
