#include "sepbound/awgn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sepbound/search.hpp"

namespace sepbound {

double c_awgn(double snr) {
    if (!(snr >= 0.0)) {
        throw ValidationError("snr must be non-negative");
    }
    return std::log1p(snr) / std::numbers::ln2;
}

RateTuple superposition_rates(const AwgnBroadcast& channel, const PowerAllocation& allocation) {
    if (allocation.receivers() != channel.size()) {
        throw ValidationError("allocation and channel differ in receiver count");
    }
    const double p = channel.power();
    std::vector<double> m(channel.size());
    for (std::size_t t = 0; t < channel.size(); ++t) {
        const double below = allocation.alpha(t);
        const double share = allocation.share(t + 1);
        m[t] = c_awgn(share * p / (channel.noise(t) + below * p));
    }
    return RateTuple::from_messages(std::move(m));
}

std::vector<double> required_alphas(const AwgnBroadcast& channel,
                                    std::span<const double> message_rates) {
    if (message_rates.size() != channel.size()) {
        throw ValidationError("target and channel differ in receiver count");
    }
    const double p = channel.power();
    std::vector<double> alphas(channel.size() + 1, 0.0);
    for (std::size_t t = 0; t < channel.size(); ++t) {
        const double grow = std::expm1(message_rates[t] * std::numbers::ln2);
        alphas[t + 1] = alphas[t] + grow * (channel.noise(t) + alphas[t] * p) / p;
    }
    return alphas;
}

AllocationOutcome min_power_allocation(const AwgnBroadcast& channel, const RateTuple& targets) {
    std::vector<double> alphas = required_alphas(channel, targets.message_rates());
    if (alphas.back() > 1.0 + kFeasibilityTolerance) {
        return Infeasible{alphas.back() - 1.0};
    }
    for (double& a : alphas) a = std::min(a, 1.0);
    return PowerAllocation::make(std::move(alphas));
}

std::vector<double> alpha_recursion(const AwgnBroadcast& channel) {
    const double p = channel.power();
    std::vector<double> alphas(channel.size(), 0.0);
    for (std::size_t t = 1; t < channel.size(); ++t) {
        const double n_t = channel.noise(t - 1);
        const double n_next = channel.noise(t);
        alphas[t] = (alphas[t - 1] * (1.0 + p / n_t) + (1.0 - n_t / n_next)) / (1.0 + p / n_next);
    }
    return alphas;
}

double closed_form_alpha_last(const AwgnBroadcast& channel) {
    double sum = 0.0;
    for (std::size_t t = 0; t + 1 < channel.size(); ++t) {
        sum += 1.0 - channel.noise(t) / channel.noise(t + 1);
    }
    return sum / (1.0 + channel.snr(channel.size() - 1));
}

PowerAllocation tight_alpha_recursion(const AwgnBroadcast& channel) {
    std::vector<double> alphas = alpha_recursion(channel);
    alphas.push_back(1.0);
    return PowerAllocation::make(std::move(alphas));
}

CorollaryBounds corollary_bounds(const AwgnBroadcast& channel) {
    const double span = channel.noises().back() / channel.noises().front();
    return {std::log2(static_cast<double>(channel.size())), std::log2(1.0 + std::log(span))};
}

GapReport thm4_gap(const AwgnBroadcast& channel) {
    const double alpha_last = alpha_recursion(channel).back();
    const CorollaryBounds cb = corollary_bounds(channel);
    return {c_awgn(alpha_last * channel.snr(channel.size() - 1)), alpha_last, cb.receivers_bound,
            cb.range_bound};
}

double uniform_backoff_distance(const AwgnBroadcast& channel) {
    const CapacityProfile caps = capacities_from_awgn(channel);
    const std::size_t n = caps.size();
    std::vector<double> messages(n);

    auto feasible = [&](double eps) {
        for (std::size_t t = 0; t < n; ++t) {
            const double here = std::max(0.0, caps[t] - eps);
            const double next = t + 1 < n ? std::max(0.0, caps[t + 1] - eps) : 0.0;
            messages[t] = here - next;
        }
        return required_alphas(channel, messages).back() <= 1.0 + kFeasibilityTolerance;
    };

    if (feasible(0.0)) return 0.0;
    return bisect_first_true(feasible, 0.0, caps.front(), 1e-10);
}

}  // namespace sepbound
