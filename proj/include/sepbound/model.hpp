#pragma once

// Domain types for successively refinable sources over degraded broadcast
// channels. All information quantities are in bits (base-2 logarithms).

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sepbound {

/// Raised when an input violates a type invariant. `index()` names the first
/// offending entry, or npos when the failure is not tied to a position.
class ValidationError : public std::invalid_argument {
  public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit ValidationError(const std::string& what, std::size_t index = npos)
        : std::invalid_argument(what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

/// Per-receiver rate-distortion values R_1 >= ... >= R_T > 0, bits per
/// source symbol. Receiver 1 demands the most information.
class RateProfile {
  public:
    static RateProfile make(std::vector<double> rates);

    std::size_t size() const noexcept { return rates_.size(); }
    std::span<const double> values() const noexcept { return rates_; }
    double operator[](std::size_t t) const { return rates_[t]; }
    double front() const { return rates_.front(); }
    double back() const { return rates_.back(); }

    /// R_t - R_{t+1} with the terminal R_{T+1} = 0.
    double increment(std::size_t t) const;

  private:
    explicit RateProfile(std::vector<double> rates) : rates_(std::move(rates)) {}
    std::vector<double> rates_;
};

/// Point-to-point capacities C_1 >= ... >= C_T > 0, bits per channel use.
class CapacityProfile {
  public:
    static CapacityProfile make(std::vector<double> capacities);

    std::size_t size() const noexcept { return capacities_.size(); }
    std::span<const double> values() const noexcept { return capacities_; }
    double operator[](std::size_t t) const { return capacities_[t]; }
    double front() const { return capacities_.front(); }
    double back() const { return capacities_.back(); }

  private:
    explicit CapacityProfile(std::vector<double> c) : capacities_(std::move(c)) {}
    std::vector<double> capacities_;
};

/// Degraded Gaussian broadcast channel: power P and noises N_1 <= ... <= N_T.
class AwgnBroadcast {
  public:
    static AwgnBroadcast make(double power, std::vector<double> noises);

    double power() const noexcept { return power_; }
    std::size_t size() const noexcept { return noises_.size(); }
    std::span<const double> noises() const noexcept { return noises_; }
    double noise(std::size_t t) const { return noises_[t]; }
    double snr(std::size_t t) const { return power_ / noises_[t]; }

  private:
    AwgnBroadcast(double power, std::vector<double> noises)
        : power_(power), noises_(std::move(noises)) {}
    double power_;
    std::vector<double> noises_;
};

/// Cumulative power fractions alpha_0 = 0 <= alpha_1 <= ... <= alpha_T <= 1.
/// Message t is carried with fraction alpha_t - alpha_{t-1}.
class PowerAllocation {
  public:
    static PowerAllocation make(std::vector<double> alphas);

    std::size_t receivers() const noexcept { return alphas_.size() - 1; }
    std::span<const double> alphas() const noexcept { return alphas_; }
    double alpha(std::size_t t) const { return alphas_[t]; }
    /// Power fraction of message t (1-based, as in alpha indexing).
    double share(std::size_t t) const { return alphas_[t] - alphas_[t - 1]; }

  private:
    explicit PowerAllocation(std::vector<double> a) : alphas_(std::move(a)) {}
    std::vector<double> alphas_;
};

/// Rates m_t of the degraded messages W_t (bits per channel use) together
/// with the cumulative rate sum_{s >= t} m_s decoded by receiver t.
class RateTuple {
  public:
    static RateTuple from_messages(std::vector<double> message_rates);

    std::size_t size() const noexcept { return messages_.size(); }
    std::span<const double> message_rates() const noexcept { return messages_; }
    std::span<const double> cumulative_rates() const noexcept { return cumulative_; }

  private:
    RateTuple(std::vector<double> m, std::vector<double> c)
        : messages_(std::move(m)), cumulative_(std::move(c)) {}
    std::vector<double> messages_;
    std::vector<double> cumulative_;
};

/// Rate r in source symbols per channel use, plus its reciprocal.
struct SchemeResult {
    double rate = 0.0;
    double uses_per_symbol = 0.0;
    std::optional<PowerAllocation> allocation;
    std::string label;

    static SchemeResult from_rate(double rate, std::string label,
                                  std::optional<PowerAllocation> allocation = std::nullopt);
    static SchemeResult from_uses(double uses_per_symbol, std::string label);
};

inline RateProfile make_rate_profile(std::vector<double> values) {
    return RateProfile::make(std::move(values));
}

/// Quadratic-Gaussian R(D) = max(0, log2(variance / distortion) / 2).
double gaussian_rate_distortion(double variance, double distortion);

/// C_t = log2(1 + P / N_t).
CapacityProfile capacities_from_awgn(const AwgnBroadcast& channel);

/// N_t = P / (2^{C_t} - 1), the inverse of capacities_from_awgn.
AwgnBroadcast noises_from_capacities(const CapacityProfile& capacities, double power);

}  // namespace sepbound
