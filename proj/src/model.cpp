#include "sepbound/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sepbound {
namespace {

std::string at(const char* what, std::size_t index) {
    return std::string(what) + " at index " + std::to_string(index);
}

void require_positive_finite(std::span<const double> values, const char* name) {
    if (values.empty()) {
        throw ValidationError(std::string(name) + " must not be empty");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ValidationError(at("non-finite value", i), i);
        }
        if (values[i] <= 0.0) {
            throw ValidationError(at("non-positive value", i), i);
        }
    }
}

void require_non_increasing(std::span<const double> values) {
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[i - 1]) {
            throw ValidationError(at("not non-increasing", i), i);
        }
    }
}

}  // namespace

RateProfile RateProfile::make(std::vector<double> rates) {
    require_positive_finite(rates, "rate profile");
    require_non_increasing(rates);
    return RateProfile(std::move(rates));
}

double RateProfile::increment(std::size_t t) const {
    return t + 1 < rates_.size() ? rates_[t] - rates_[t + 1] : rates_[t];
}

CapacityProfile CapacityProfile::make(std::vector<double> capacities) {
    require_positive_finite(capacities, "capacity profile");
    require_non_increasing(capacities);
    return CapacityProfile(std::move(capacities));
}

AwgnBroadcast AwgnBroadcast::make(double power, std::vector<double> noises) {
    if (!std::isfinite(power) || power <= 0.0) {
        throw ValidationError("power must be positive and finite");
    }
    require_positive_finite(noises, "noise profile");
    for (std::size_t i = 1; i < noises.size(); ++i) {
        if (noises[i] < noises[i - 1]) {
            throw ValidationError(at("not non-decreasing", i), i);
        }
    }
    return AwgnBroadcast(power, std::move(noises));
}

PowerAllocation PowerAllocation::make(std::vector<double> alphas) {
    if (alphas.size() < 2) {
        throw ValidationError("allocation needs alpha_0 and at least one receiver");
    }
    if (alphas.front() != 0.0) {
        throw ValidationError("alpha_0 must be 0", 0);
    }
    for (std::size_t i = 1; i < alphas.size(); ++i) {
        if (!std::isfinite(alphas[i])) {
            throw ValidationError(at("non-finite value", i), i);
        }
        if (alphas[i] < alphas[i - 1]) {
            throw ValidationError(at("not non-decreasing", i), i);
        }
    }
    if (alphas.back() > 1.0) {
        throw ValidationError(at("exceeds total power", alphas.size() - 1), alphas.size() - 1);
    }
    return PowerAllocation(std::move(alphas));
}

RateTuple RateTuple::from_messages(std::vector<double> message_rates) {
    std::vector<double> cumulative(message_rates.size());
    double running = 0.0;
    for (std::size_t i = message_rates.size(); i-- > 0;) {
        if (!std::isfinite(message_rates[i]) || message_rates[i] < 0.0) {
            throw ValidationError(at("negative or non-finite message rate", i), i);
        }
        running += message_rates[i];
        cumulative[i] = running;
    }
    return RateTuple(std::move(message_rates), std::move(cumulative));
}

SchemeResult SchemeResult::from_rate(double rate, std::string label,
                                     std::optional<PowerAllocation> allocation) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw ValidationError("scheme rate must be positive and finite");
    }
    return SchemeResult{rate, 1.0 / rate, std::move(allocation), std::move(label)};
}

SchemeResult SchemeResult::from_uses(double uses_per_symbol, std::string label) {
    if (!(uses_per_symbol > 0.0) || !std::isfinite(uses_per_symbol)) {
        throw ValidationError("channel uses per symbol must be positive and finite");
    }
    return SchemeResult{1.0 / uses_per_symbol, uses_per_symbol, std::nullopt, std::move(label)};
}

double gaussian_rate_distortion(double variance, double distortion) {
    if (!(variance > 0.0) || !std::isfinite(variance)) {
        throw ValidationError("variance must be positive and finite");
    }
    if (!(distortion > 0.0)) {
        throw ValidationError("distortion must be positive");
    }
    if (distortion > variance) {
        throw ValidationError("distortion exceeds variance");
    }
    return std::max(0.0, 0.5 * std::log2(variance / distortion));
}

CapacityProfile capacities_from_awgn(const AwgnBroadcast& channel) {
    std::vector<double> c;
    c.reserve(channel.size());
    for (std::size_t t = 0; t < channel.size(); ++t) {
        c.push_back(std::log1p(channel.snr(t)) / std::numbers::ln2);
    }
    return CapacityProfile::make(std::move(c));
}

AwgnBroadcast noises_from_capacities(const CapacityProfile& capacities, double power) {
    std::vector<double> n;
    n.reserve(capacities.size());
    for (double c : capacities.values()) {
        n.push_back(power / std::expm1(c * std::numbers::ln2));
    }
    return AwgnBroadcast::make(power, std::move(n));
}

}  // namespace sepbound
