#include "sepbound/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sepbound/search.hpp"

namespace sepbound {
namespace {

void require_same_size(std::size_t a, std::size_t b) {
    if (a != b) {
        throw ValidationError("profiles differ in receiver count");
    }
}

std::vector<double> increments(const RateProfile& rates) {
    std::vector<double> d(rates.size());
    for (std::size_t t = 0; t < rates.size(); ++t) d[t] = rates.increment(t);
    return d;
}

constexpr int kTiltGrid = 32;
constexpr double kTiltTolerance = 1e-6;
constexpr double kShareTolerance = 1e-12;

}  // namespace

SchemeResult joint_reference_rate(const RateProfile& rates, const CapacityProfile& capacities) {
    require_same_size(rates.size(), capacities.size());
    double uses = 0.0;
    for (std::size_t t = 0; t < rates.size(); ++t) {
        uses = std::max(uses, rates[t] / capacities[t]);
    }
    return SchemeResult::from_uses(uses, label::kJointReference);
}

SchemeResult time_sharing_rate(const RateProfile& rates, const CapacityProfile& capacities) {
    require_same_size(rates.size(), capacities.size());
    double uses = 0.0;
    for (std::size_t t = 0; t < rates.size(); ++t) {
        uses += rates.increment(t) / capacities[t];
    }
    return SchemeResult::from_uses(uses, label::kTimeSharing);
}

SchemeResult optimal_separation_rate(const RateProfile& rates, const AwgnBroadcast& channel) {
    require_same_size(rates.size(), channel.size());
    const CapacityProfile caps = capacities_from_awgn(channel);
    if (rates.size() == 1) {
        return SchemeResult::from_rate(caps[0] / rates[0], label::kOptimalSeparation,
                                       PowerAllocation::make({0.0, 1.0}));
    }

    const std::vector<double> d = increments(rates);
    double r_cap = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < rates.size(); ++t) r_cap = std::min(r_cap, caps[t] / rates[t]);
    const double r_hi = r_cap * static_cast<double>(rates.size());

    std::vector<double> targets(d.size());
    auto feasible = [&](double r) {
        for (std::size_t t = 0; t < d.size(); ++t) targets[t] = r * d[t];
        return required_alphas(channel, targets).back() <= 1.0;
    };
    const double r = bisect_last_true(feasible, 0.0, r_hi, 0.0);

    for (std::size_t t = 0; t < d.size(); ++t) targets[t] = r * d[t];
    AllocationOutcome witness = min_power_allocation(channel, RateTuple::from_messages(targets));
    return SchemeResult::from_rate(r, label::kOptimalSeparation,
                                   std::get<PowerAllocation>(std::move(witness)));
}

PowerAllocation linear_share_allocation(std::size_t receivers, double total, double tilt) {
    if (receivers < 2) {
        throw ValidationError("linear share allocation needs at least two receivers");
    }
    if (!(total >= 0.0 && total <= 1.0) || !(tilt >= 0.0 && tilt <= 1.0)) {
        throw ValidationError("total and tilt must lie in [0, 1]");
    }
    const std::size_t n = receivers - 1;
    std::vector<double> alphas(receivers + 1, 0.0);
    if (n == 1) {
        alphas[1] = total;
    } else {
        const double first = tilt * 2.0 * total / static_cast<double>(n);
        const double last = (1.0 - tilt) * 2.0 * total / static_cast<double>(n);
        for (std::size_t t = 0; t < n; ++t) {
            const double share =
                first + (last - first) * static_cast<double>(t) / static_cast<double>(n - 1);
            alphas[t + 1] = std::min(1.0, alphas[t] + share);
        }
    }
    alphas[receivers] = 1.0;
    return PowerAllocation::make(std::move(alphas));
}

double carried_rate(const RateProfile& rates, const AwgnBroadcast& channel,
                    const PowerAllocation& allocation) {
    require_same_size(rates.size(), channel.size());
    const RateTuple carried = superposition_rates(channel, allocation);
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < rates.size(); ++t) {
        const double d = rates.increment(t);
        if (d > 0.0) r = std::min(r, carried.message_rates()[t] / d);
    }
    return r;
}

SchemeResult two_dof_rate(const RateProfile& rates, const AwgnBroadcast& channel) {
    require_same_size(rates.size(), channel.size());
    const std::size_t n = rates.size();
    if (n < 2) {
        throw ValidationError("two-parameter strategy needs at least two receivers");
    }

    auto rate_at = [&](double total, double tilt) {
        return carried_rate(rates, channel, linear_share_allocation(n, total, tilt));
    };
    // r is the minimum of rates that grow with `total` and the last
    // receiver's rate, which shrinks with it, so it is unimodal in `total`.
    auto best_total = [&](double tilt) {
        return golden_section_maximize([&](double s) { return rate_at(s, tilt); }, 0.0, 1.0,
                                       kShareTolerance);
    };

    double tilt = 0.5;
    Maximum inner = best_total(tilt);
    if (n > 2) {
        for (int i = 0; i <= kTiltGrid; ++i) {
            const double w = static_cast<double>(i) / kTiltGrid;
            const Maximum m = best_total(w);
            if (m.value > inner.value) {
                inner = m;
                tilt = w;
            }
        }
        const double half = 1.0 / kTiltGrid;
        const Maximum refined = golden_section_maximize(
            [&](double w) { return best_total(w).value; }, std::max(0.0, tilt - half),
            std::min(1.0, tilt + half), kTiltTolerance);
        if (refined.value > inner.value) {
            tilt = refined.x;
            inner = best_total(tilt);
        }
    }
    return SchemeResult::from_rate(inner.value, label::kTwoDof,
                                   linear_share_allocation(n, inner.x, tilt));
}

std::map<std::string, double> relative_rates(const RateProfile& rates,
                                             const AwgnBroadcast& channel) {
    const CapacityProfile caps = capacities_from_awgn(channel);
    const double joint = joint_reference_rate(rates, caps).rate;
    std::map<std::string, double> out;
    out[label::kJointReference] = 1.0;
    out[label::kTimeSharing] = time_sharing_rate(rates, caps).rate / joint;
    out[label::kOptimalSeparation] = optimal_separation_rate(rates, channel).rate / joint;
    if (rates.size() >= 2) {
        out[label::kTwoDof] = two_dof_rate(rates, channel).rate / joint;
    }
    return out;
}

}  // namespace sepbound
