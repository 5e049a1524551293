#include <doctest.h>

#include <functional>
#include <optional>
#include <random>

#include "oracles.hpp"
#include "sepbound/bounds.hpp"

using namespace sepbound;

TEST_CASE("naive_factor equals the receiver count") {
    CHECK(naive_factor(1).factor == 1.0);
    CHECK(naive_factor(2).factor == 2.0);
    CHECK(naive_factor(7).factor == 7.0);
    CHECK_THROWS_AS(naive_factor(0), ValidationError);
}

TEST_CASE("refined_factor examples and both algebraic forms") {
    CHECK(refined_factor(make_rate_profile({3.0, 3.0, 3.0, 3.0})).factor == 1.0);
    CHECK(refined_factor(make_rate_profile({2.0, 1.0})).factor == doctest::Approx(1.5));
    CHECK(refined_factor(make_rate_profile({4.0, 2.0, 1.0})).factor == doctest::Approx(2.0));
    CHECK(refined_factor(make_rate_profile({4.0, 2.0, 1.0})).factor ==
          doctest::Approx(worst_case_factor(1.0, 4.0, 3).factor));
    CHECK(refined_factor(make_rate_profile({5.0})).factor == 1.0);

    std::mt19937_64 rng(21);
    for (int i = 0; i < 1000; ++i) {
        const auto rates = oracle::random_rates(rng, 1 + rng() % 20);
        const double f = refined_factor(make_rate_profile(rates)).factor;
        CHECK(std::abs(f - oracle::refined_second_form(rates)) < 1e-12);
    }
}

TEST_CASE("worst_case_factor") {
    CHECK(worst_case_factor(3.0, 3.0, 9).factor == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(worst_case_factor(1.0, 4.0, 2).factor == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(worst_case_factor(1.0, 4.0, 2).factor ==
          doctest::Approx(refined_factor(make_rate_profile({4.0, 1.0})).factor));
    CHECK(worst_case_factor(1.0, 4.0, 1).factor == 1.0);
    // 1 - (T-1) expm1(-ln 1000 / (T-1)) at T = 10^4, mpmath
    CHECK(oracle::rel_err(worst_case_factor(1.0, 1000.0, 10000).factor, 7.9053697356013678966) <
          1e-12);
    CHECK_THROWS_AS(worst_case_factor(2.0, 1.0, 3), ValidationError);
    CHECK_THROWS_AS(worst_case_factor(0.0, 1.0, 3), ValidationError);
}

TEST_CASE("asymptotic_factor") {
    CHECK(asymptotic_factor(2.0, 2.0).factor == 1.0);
    CHECK(oracle::rel_err(asymptotic_factor(1.0, 1000.0).factor, 7.9077552789821370521) < 1e-15);
    CHECK(asymptotic_factor(1.0, std::exp(1.0)).factor == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(asymptotic_factor(3.0, 1.0), ValidationError);
}

TEST_CASE("maximizing_profile is geometric") {
    auto as_vector = [](const RateProfile& p) {
        return std::vector<double>(p.values().begin(), p.values().end());
    };
    auto close = [](const std::vector<double>& got, const std::vector<double>& want) {
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]));
    };
    close(as_vector(maximizing_profile(1, 4, 3)), {4, 2, 1});
    close(as_vector(maximizing_profile(1, 1, 5)), {1, 1, 1, 1, 1});
    close(as_vector(maximizing_profile(1, 8, 4)), {8, 4, 2, 1});
    CHECK(maximizing_profile(1, 8, 1).size() == 1);
    CHECK_THROWS_AS(maximizing_profile(5, 4, 3), ValidationError);

    const RateProfile p = maximizing_profile(0.3, 70.0, 12);
    CHECK(p.front() == 70.0);
    CHECK(p.back() == 0.3);
    const double q = std::pow(0.3 / 70.0, 1.0 / 11.0);
    for (std::size_t t = 0; t + 1 < p.size(); ++t) CHECK(p[t + 1] / p[t] == doctest::Approx(q));
}

TEST_CASE("combined_factor") {
    const auto rates = make_rate_profile({2.0, 1.0});
    CHECK(combined_factor(rates, CapacityProfile::make({2.0, 1.0})).factor == doctest::Approx(1.5));
    CHECK(combined_factor(rates, CapacityProfile::make({2.0, 1.0})).factor ==
          doctest::Approx(refined_factor(rates).factor));
    CHECK(combined_factor(make_rate_profile({7.0}), CapacityProfile::make({0.3})).factor == 1.0);
    CHECK(combined_factor(make_rate_profile({1.0, 1.0}), CapacityProfile::make({4.0, 1.0})).factor ==
          1.0);
    CHECK_THROWS_AS(combined_factor(rates, CapacityProfile::make({1.0})), ValidationError);
}

TEST_CASE("worst_case_combined closed form") {
    CHECK(worst_case_combined(1.0, 1.0, 6).factor == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(worst_case_combined(4.0, 2.0, 2).factor == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(worst_case_combined(4.0, 2.0, 2).factor ==
          doctest::Approx(worst_case_factor(1.0, 4.0, 2).factor));
    CHECK(worst_case_combined(2.0, 8.0, 4).factor == doctest::Approx(2.5).epsilon(1e-15));
    CHECK_THROWS_AS(worst_case_combined(0.5, 2.0, 3), ValidationError);
}

// Exhaustive search over profiles whose rate span is <= rate_ratio and
// capacity span <= capacity_ratio. Profiles are built from per-step log
// ratios on a grid, so every monotone profile shape in range is visited.
double grid_max_combined(double rate_ratio, double capacity_ratio, std::size_t t, int levels) {
    const std::size_t steps = t - 1;
    std::vector<int> ri(steps, 0), ci(steps, 0);
    double best = 0.0;
    auto build = [&](const std::vector<int>& idx, double span) -> std::optional<std::vector<double>> {
        std::vector<double> v{1.0};
        double used = 0.0;
        for (int k : idx) {
            const double step = std::log(span) * k / (levels - 1);
            used += step;
            v.push_back(v.back() * std::exp(-step));
        }
        if (used > std::log(span) + 1e-12) return std::nullopt;
        return v;
    };
    std::function<void(std::size_t)> rec_c;
    std::function<void(std::size_t)> rec_r = [&](std::size_t d) {
        if (d == steps) {
            rec_c(0);
            return;
        }
        for (int k = 0; k < levels; ++k) {
            ri[d] = k;
            rec_r(d + 1);
        }
    };
    rec_c = [&](std::size_t d) {
        if (d == steps) {
            auto r = build(ri, rate_ratio);
            auto c = build(ci, capacity_ratio);
            if (!r || !c) return;
            best = std::max(best, combined_factor(make_rate_profile(*r),
                                                  CapacityProfile::make(*c)).factor);
            return;
        }
        for (int k = 0; k < levels; ++k) {
            ci[d] = k;
            rec_c(d + 1);
        }
    };
    rec_r(0);
    return best;
}

TEST_CASE("worst_case_combined dominates the grid maximum of combined_factor") {
    // The grid maximum is attained with R proportional to C at the smaller
    // span, so it matches worst_case_factor of the smaller ratio.
    struct Case { double rr, cr; std::size_t t; };
    for (const Case c : {Case{2.0, 8.0, 4}, Case{8.0, 2.0, 3}, Case{4.0, 4.0, 3}, Case{3.0, 9.0, 2}}) {
        const double grid = grid_max_combined(c.rr, c.cr, c.t, c.t == 4 ? 10 : 31);
        CHECK(grid <= worst_case_combined(c.rr, c.cr, c.t).factor + 1e-9);
        CHECK(grid == doctest::Approx(worst_case_factor(1.0, std::min(c.rr, c.cr), c.t).factor)
                          .epsilon(1e-9));
    }
}

TEST_CASE("dominance: refined factor is strictly below the receiver count") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t t = 2 + rng() % 30;
        const auto rates = oracle::random_rates(rng, t, 1e-3, 1e3);
        const double f = refined_factor(make_rate_profile(rates)).factor;
        CHECK(f < naive_factor(t).factor);
        CHECK(f >= 1.0);
    }
}

TEST_CASE("maximizer: random profiles never beat the geometric one") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const double r_min = oracle::log_uniform(rng, 0.01, 1.0);
        const double r_max = r_min * oracle::log_uniform(rng, 1.0, 1e4);
        const std::size_t t = 2 + rng() % 10;
        const double bound = worst_case_factor(r_min, r_max, t).factor;
        CHECK(std::abs(refined_factor(maximizing_profile(r_min, r_max, t)).factor - bound) < 1e-12);
        for (int i = 0; i < 2000; ++i) {
            const auto rates = oracle::random_rates(rng, t, r_min, r_max);
            CHECK(refined_factor(make_rate_profile(rates)).factor <= bound + 1e-9);
        }
    }
}

TEST_CASE("worst_case_factor grows with T towards the asymptotic factor") {
    for (double span : {1.5, 8.0, 1000.0}) {
        double previous = 1.0;
        for (std::size_t t = 1; t <= 4096; t *= 2) {
            const double f = worst_case_factor(1.0, span, t).factor;
            CHECK(f >= previous - 1e-15);
            previous = f;
        }
        const double limit = asymptotic_factor(1.0, span).factor;
        CHECK(previous <= limit);
        CHECK(limit - worst_case_factor(1.0, span, 1000000).factor < 1e-4);
    }
}

TEST_CASE("scale invariance") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 500; ++i) {
        const std::size_t t = 1 + rng() % 12;
        const auto rates = oracle::random_rates(rng, t);
        const auto caps = oracle::random_rates(rng, t);
        // power-of-two scaling is exact in floating point
        const double s = std::ldexp(1.0, static_cast<int>(rng() % 40) - 20);
        std::vector<double> rs = rates, cs = caps;
        for (double& v : rs) v *= s;
        for (double& v : cs) v *= s * 2.0;
        const auto p = make_rate_profile(rates), ps = make_rate_profile(rs);
        const auto c = CapacityProfile::make(caps), csc = CapacityProfile::make(cs);
        CHECK(refined_factor(ps).factor == refined_factor(p).factor);
        CHECK(combined_factor(ps, csc).factor == combined_factor(p, c).factor);
        CHECK(worst_case_factor(rs.back(), rs.front(), t).factor ==
              worst_case_factor(rates.back(), rates.front(), t).factor);

        const double any = oracle::log_uniform(rng, 1e-3, 1e3);
        for (double& v : rs) v = v / s * any;
        CHECK(oracle::rel_err(refined_factor(make_rate_profile(rs)).factor,
                              refined_factor(p).factor) < 1e-13);
    }
}

TEST_CASE("combined_factor consistency with constant profiles") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 500; ++i) {
        const std::size_t t = 1 + rng() % 12;
        const auto rates = oracle::random_rates(rng, t);
        const auto caps = oracle::random_rates(rng, t);
        const double k = oracle::log_uniform(rng, 0.1, 10.0);
        // capacities proportional to rates: time-sharing reduces to the refined factor
        std::vector<double> scaled = rates;
        for (double& v : scaled) v *= k;
        CHECK(oracle::rel_err(combined_factor(make_rate_profile(rates), CapacityProfile::make(scaled)).factor,
                              refined_factor(make_rate_profile(rates)).factor) < 1e-12);
        // constant capacities: one receiver in disguise
        CHECK(combined_factor(make_rate_profile(rates), CapacityProfile::make(std::vector<double>(t, k)))
                  .factor == doctest::Approx(1.0).epsilon(1e-14));
        // constant rates: only the common message is sent and the joint
        // limit is set by the same receiver, so no loss remains
        CHECK(combined_factor(make_rate_profile(std::vector<double>(t, k)),
                              CapacityProfile::make(caps))
                  .factor == doctest::Approx(1.0).epsilon(1e-14));
    }
}
