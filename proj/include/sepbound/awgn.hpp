#pragma once

// Degraded AWGN broadcast channel: superposition-coding rates, the greedy
// minimal-power inversion, and the additive gap of the best achievable point.

#include <span>
#include <variant>
#include <vector>

#include "sepbound/model.hpp"

namespace sepbound {

/// Absolute slack on alpha_T when deciding feasibility.
inline constexpr double kFeasibilityTolerance = 1e-12;

/// log2(1 + snr).
double c_awgn(double snr);

/// m_t = log2(1 + (alpha_t - alpha_{t-1}) P / (N_t + alpha_{t-1} P)).
RateTuple superposition_rates(const AwgnBroadcast& channel, const PowerAllocation& allocation);

/// Outcome of a power inversion that needs more than the full power budget.
struct Infeasible {
    double overflow;  ///< alpha_T - 1 (> kFeasibilityTolerance)
};

using AllocationOutcome = std::variant<PowerAllocation, Infeasible>;

/// Cumulative fractions needed when every stage is made tight:
/// alpha_t = alpha_{t-1} + (2^{m_t} - 1)(N_t + alpha_{t-1} P) / P.
/// No feasibility check; the last entry may exceed 1.
std::vector<double> required_alphas(const AwgnBroadcast& channel,
                                    std::span<const double> message_rates);

/// The minimal-power allocation carrying `targets`, or Infeasible. Each
/// stage's increment grows with the interference below it, so the greedy
/// tight allocation is also the globally minimal one.
AllocationOutcome min_power_allocation(const AwgnBroadcast& channel, const RateTuple& targets);

inline bool is_feasible(const AllocationOutcome& outcome) {
    return std::holds_alternative<PowerAllocation>(outcome);
}

/// alpha_0..alpha_{T-1} from
///   alpha_t (1 + P/N_{t+1}) = alpha_{t-1} (1 + P/N_t) + 1 - N_t/N_{t+1},
/// i.e. message t < T carries exactly C_t - C_{t+1}. Values are returned
/// as computed; alpha_{T-1} can exceed 1 at very low SNR.
std::vector<double> alpha_recursion(const AwgnBroadcast& channel);

/// Closed form alpha_{T-1} = sum_{t<T} (1 - N_t/N_{t+1}) / (1 + P/N_T).
double closed_form_alpha_last(const AwgnBroadcast& channel);

/// alpha_recursion completed with alpha_T = 1. Throws ValidationError when
/// the recursion already exceeds the power budget.
PowerAllocation tight_alpha_recursion(const AwgnBroadcast& channel);

struct GapReport {
    double gap_bits = 0.0;
    double alpha_last = 0.0;
    double corollary_t_bound = 0.0;
    double corollary_range_bound = 0.0;
};

struct CorollaryBounds {
    double receivers_bound;  ///< log2 T
    double range_bound;      ///< log2(1 + ln(N_T / N_1))
};

CorollaryBounds corollary_bounds(const AwgnBroadcast& channel);

/// Gap between the best achievable point and the superposition region along
/// the most degraded receiver's axis: c_awgn(alpha_{T-1} P / N_T).
GapReport thm4_gap(const AwgnBroadcast& channel);

/// Smallest eps >= 0 for which the cumulative point (C_t - eps)_+ is
/// achievable by superposition coding (uniform per-receiver backoff).
double uniform_backoff_distance(const AwgnBroadcast& channel);

}  // namespace sepbound
