#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "reset_search/analytic.hpp"
#include "reset_search/mc.hpp"

using namespace rsearch;
using namespace rsearch::mc;

namespace {

SimSettings settings_with(std::int64_t n, std::uint64_t seed)
{
    SimSettings s;
    s.n_replicates = n;
    s.seed = seed;
    return s;
}

// |mean − reference| within k standard errors plus a relative allowance for
// time discretization.
bool within(McEstimate const& est, double reference, double k, double rel_bias)
{
    return std::fabs(est.mean - reference) <= k * est.std_error + rel_bias * reference;
}

}  // namespace

TEST_CASE("settings validation")
{
    auto const spec1 = SearchSpec::poisson(1, 1, 1);
    auto const spec3 = SearchSpec::poisson(3, 1, 1, 0.1);
    SimSettings s;
    CHECK_NOTHROW(s.validate(spec1));
    s.dt = -1;
    CHECK_THROWS_AS(s.validate(spec1), InvalidArgument);
    s = {};
    s.n_replicates = 0;
    CHECK_THROWS_AS(s.validate(spec1), InvalidArgument);
    s = {};
    s.max_resets = -1;
    CHECK_THROWS_AS(s.validate(spec1), InvalidArgument);
    s = {};
    s.dt = 1e-4;
    CHECK_NOTHROW(s.validate(spec3));
    s.dt = 1.1e-4;
    CHECK_THROWS_AS(s.validate(spec3), InvalidArgument);
}

TEST_CASE("default time step")
{
    auto const spec1 = SearchSpec::poisson(1, 2, 1);
    CHECK(default_dt(spec1, TargetSpec::fixed_at(2)) == doctest::Approx(4.0 / 800));
    CHECK(default_dt(spec1, TargetSpec::gaussian(0.5)) == doctest::Approx(0.5 / 800));
    auto const spec3 = SearchSpec::bridge(3, 0.5, 12, 0.05);
    CHECK(default_dt(spec3, TargetSpec::fixed_at(1)) == doctest::Approx(0.005 * 0.005 / 0.5));
}

TEST_CASE("pairwise sum and summary")
{
    std::vector<double> v(1000);
    std::iota(v.begin(), v.end(), 1.0);
    CHECK(pairwise_sum(v.data(), v.size()) == 500500);
    CHECK(pairwise_sum(v.data(), 0) == 0);
    std::vector<HitSample> s{{1, false}, {2, false}, {3, true}, {6, false}};
    auto const e = summarize(s);
    CHECK(e.mean == 3);
    CHECK(e.std_error == doctest::Approx(std::sqrt(14.0 / 3 / 4)));
    CHECK(e.n == 4);
    CHECK(e.censored_fraction == 0.25);
    CHECK(e.bias_warning());
}

TEST_CASE("bridge transition is pinned and has the right law")
{
    rng::Stream stream(1, 2, 3);
    CHECK(bridge_increment(0.7, 0.5, 1.0, 0.5, 1.0, stream) == 0);
    CHECK_THROWS_AS(bridge_increment(0.7, 0.5, 1.0, 0.6, 1.0, stream), InvalidArgument);
    CHECK_THROWS_AS(bridge_increment(0.0, 1.5, 1.0, 0.1, 1.0, stream), InvalidArgument);

    // From 0 at t = 0 to T/2: mean 0, variance D·T/4.
    double const T = 3, D = 0.8;
    int const n = 200000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i)
    {
        double const x = bridge_increment(0.0, 0.0, T, T / 2, D, stream);
        sum += x;
        sum2 += x * x;
    }
    double const var = D * T / 4;
    CHECK(std::fabs(sum / n) < 5 * std::sqrt(var / n));
    CHECK(std::fabs(sum2 / n - var) < 5 * var * std::sqrt(2.0 / n));

    // Two half steps compose to the same law as one step.
    sum = sum2 = 0;
    for (int i = 0; i < n; ++i)
    {
        double x = bridge_increment(0.0, 0.0, T, T / 4, D, stream);
        x = bridge_increment(x, T / 4, T, T / 4, D, stream);
        sum2 += x * x;
    }
    CHECK(std::fabs(sum2 / n - var) < 5 * var * std::sqrt(2.0 / n));
}

TEST_CASE("crossing correction")
{
    CHECK(crossing_probability(0, 0.5, 1, 1, 1) == doctest::Approx(std::exp(-1.0)));
    CHECK(crossing_probability(0, 0, 1, 0.5, 2) == doctest::Approx(std::exp(-2.0)));
    rng::Stream stream(4, 4, 4);
    CHECK(crossing_correction_1d(0.5, 1.5, 1, 0.1, 1, stream));
    CHECK(crossing_correction_1d(0.5, 1.0, 1, 0.1, 1, stream));
    int hits = 0;
    int const n = 100000;
    for (int i = 0; i < n; ++i)
        hits += crossing_correction_1d(0.2, 0.4, 1, 0.5, 1, stream);
    double const p = crossing_probability(0.2, 0.4, 1, 0.5, 1);
    CHECK(std::fabs(double(hits) / n - p) < 5 * std::sqrt(p * (1 - p) / n));

    // Far from the level the probability is e^{−40}: no hits in 10⁶ trials.
    hits = 0;
    for (int i = 0; i < 1000000; ++i)
        hits += crossing_correction_1d(0.5, 0.6, 1, 0.01, 1, stream);
    CHECK(hits == 0);
    CHECK(crossing_probability(0.5, 0.6, 1, 0.01, 1) == doctest::Approx(std::exp(-40.0)));
}

TEST_CASE("bridge paths are centred at every time")
{
    rng::Stream stream(6, 6, 6);
    double const T = 2, D = 1.5;
    int const steps = 8, n = 20000;
    std::vector<double> sum(steps, 0), sum2(steps, 0);
    for (int i = 0; i < n; ++i)
    {
        double x = 0;
        for (int k = 0; k < steps; ++k)
        {
            x = bridge_increment(x, k * T / steps, T, T / steps, D, stream);
            sum[k] += x;
            sum2[k] += x * x;
        }
    }
    for (int k = 0; k < steps - 1; ++k)
    {
        double const t = (k + 1) * T / steps;
        double const var = D * t * (1 - t / T);
        CHECK(std::fabs(sum[k] / n) < 4 * std::sqrt(var / n));
        CHECK(std::fabs(sum2[k] / n - var) < 4 * var * std::sqrt(2.0 / n));
    }
    CHECK(sum[steps - 1] == 0);
    CHECK(sum2[steps - 1] == 0);
}

TEST_CASE("targets at the start are found at time zero")
{
    auto const s = settings_with(5, 1);
    for (auto spec : {SearchSpec::poisson(1, 1, 1), SearchSpec::bridge(1, 1, 1),
                      SearchSpec::periodic(1, 1, 1)})
        for (auto const& h : simulate_replicates(spec, TargetSpec::fixed_at(0), s))
        {
            CHECK(h.time == 0);
            CHECK_FALSE(h.censored);
        }
    auto const inside = simulate_replicates(SearchSpec::poisson(3, 1, 1, 0.1),
                                            TargetSpec::fixed({0.05, 0.0, 0.0}), s);
    for (auto const& h : inside)
        CHECK(h.time == 0);
}

TEST_CASE("single replicates match the batch and thread count is irrelevant")
{
    auto const spec = SearchSpec::periodic(1, 1, 1);
    auto const target = TargetSpec::fixed_at(1);
    auto s = settings_with(64, 99);
    s.threads = 1;
    auto const one = simulate_replicates(spec, target, s);
    s.threads = 3;
    auto const three = simulate_replicates(spec, target, s);
    REQUIRE(one.size() == 64);
    for (std::size_t i = 0; i < one.size(); ++i)
    {
        CHECK(one[i].time == three[i].time);
        auto const single = sample_hitting_time(spec, target, s, std::int64_t(i));
        CHECK(single.time == one[i].time);
    }
    s.threads = 1;
    auto const e1 = estimate_mean(spec, target, s);
    s.threads = 5;
    auto const e5 = estimate_mean(spec, target, s);
    CHECK(e1.mean == e5.mean);
    CHECK(e1.std_error == e5.std_error);
    s.seed = 100;
    CHECK(estimate_mean(spec, target, s).mean != e1.mean);
}

TEST_CASE("1d means agree with the closed forms")
{
    auto const s = settings_with(8000, 21);
    auto const target = TargetSpec::fixed_at(1);
    auto const poisson = estimate_mean(SearchSpec::poisson(1, 1, 0.5), target, s);
    CHECK(within(poisson, analytic::poisson_fixed_1d(0.5, 1, 1).value(), 3, 0.01));
    auto const fast = estimate_mean(SearchSpec::poisson(1, 0.5, 2), TargetSpec::fixed_at(0.6), s);
    CHECK(within(fast, analytic::poisson_fixed_1d(2, 0.5, 0.6).value(), 3, 0.01));
    auto const slow = estimate_mean(SearchSpec::poisson(1, 2, 0.2), TargetSpec::fixed_at(-1.5), s);
    CHECK(within(slow, analytic::poisson_fixed_1d(0.2, 2, 1.5).value(), 3, 0.01));
    auto const bridge = estimate_mean(SearchSpec::bridge(1, 1, 1), target, s);
    CHECK(within(bridge, analytic::bridge_fixed_1d(1, 1, 1).value(), 3, 0.01));
    auto const periodic = estimate_mean(SearchSpec::periodic(1, 1, 1), target, s);
    CHECK(within(periodic, analytic::periodic_fixed_1d(1, 1, 1).value(), 3, 0.01));
    CHECK(poisson.censored_fraction == 0);
}

TEST_CASE("1d gaussian target agrees with the averaged closed form")
{
    auto const s = settings_with(8000, 5);
    auto const est = estimate_mean(SearchSpec::poisson(1, 1, 0.491), TargetSpec::gaussian(1), s);
    CHECK(within(est, analytic::gauss_poisson_1d(0.491), 3, 0.01));
}

TEST_CASE("segment hit frequencies")
{
    auto const s = settings_with(20000, 8);
    auto const b = estimate_segment_hit_probability(SearchSpec::bridge(1, 1, 1), 1, s);
    double const pb = analytic::bridge_crossing_prob(1, 1, 1);
    CHECK(std::fabs(b.p - pb) < 3 * b.std_error + 0.005);
    auto const p = estimate_segment_hit_probability(SearchSpec::periodic(1, 1, 1), 1, s);
    double const pp = std::erfc(1 / std::sqrt(2.0));
    CHECK(std::fabs(p.p - pp) < 3 * p.std_error + 0.005);
    CHECK(b.n == 20000);
    CHECK_THROWS_AS(estimate_segment_hit_probability(SearchSpec::poisson(1, 1, 1), 1, s),
                    UnsupportedCombination);
}

TEST_CASE("censoring")
{
    auto s = settings_with(200, 2);
    s.max_resets = 0;
    try
    {
        estimate_mean(SearchSpec::poisson(1, 1, 5), TargetSpec::fixed_at(3), s);
        FAIL("expected ExcessiveCensoring");
    }
    catch (ExcessiveCensoring const& e)
    {
        CHECK(e.estimate.censored_fraction > 0.05);
        CHECK(e.estimate.n == 200);
        CHECK(e.estimate.bias_warning());
    }
    s.max_resets = 100000;
    CHECK(estimate_mean(SearchSpec::poisson(1, 1, 0.5), TargetSpec::fixed_at(1), s)
              .censored_fraction
          == 0);
}

TEST_CASE("3d periodic mean")
{
    auto const s = settings_with(3000, 13);
    auto const est = estimate_mean(SearchSpec::periodic(3, 1, 3, 0.1),
                                   TargetSpec::fixed({1, 0, 0}), s);
    CHECK(within(est, analytic::periodic_fixed_3d(3, 1, 1, 0.1).value(), 3, 0.02));
}

TEST_CASE("3d poisson mean under variance 2t per coordinate")
{
    // With per-coordinate variance 2t (diffusion 2 here) the Bessel-form
    // expectation at D = 1 applies.
    auto const s = settings_with(3000, 17);
    auto const est = estimate_mean(SearchSpec::poisson(3, 2, 1, 0.1),
                                   TargetSpec::fixed({1, 0, 0}), s);
    CHECK(within(est, analytic::poisson_fixed_3d(1, 1, 1, 0.1).value(), 3, 0.02));
    CHECK(analytic::poisson_fixed_3d(1, 1, 1, 0.1).value()
          == doctest::Approx(23.596).epsilon(1e-4));
}
