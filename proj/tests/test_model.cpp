#include <doctest.h>

#include <cmath>

#include "reset_search/model.hpp"

using namespace rsearch;

TEST_CASE("search spec validation")
{
    CHECK_NOTHROW(SearchSpec::poisson(1, 1.0, 0.5));
    CHECK_THROWS_AS(SearchSpec::poisson(0, 1.0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(SearchSpec::poisson(4, 1.0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(SearchSpec::poisson(1, 0.0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(SearchSpec::poisson(1, 1.0, -1.0), InvalidArgument);
    CHECK_THROWS_AS(SearchSpec::periodic(1, 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(SearchSpec::bridge(1, NAN, 1.0), InvalidArgument);
    CHECK_THROWS_AS(SearchSpec::poisson(3, 1.0, 1.0, 0.0), InvalidArgument);
    // ε₀ is irrelevant in one dimension.
    CHECK_NOTHROW(SearchSpec::poisson(1, 1.0, 1.0, 0.0));
}

TEST_CASE("two dimensions support only poisson reset")
{
    CHECK_NOTHROW(SearchSpec::poisson(2, 1.0, 1.0));
    CHECK_THROWS_AS(SearchSpec::periodic(2, 1.0, 1.0), UnsupportedCombination);
    CHECK_THROWS_AS(SearchSpec::bridge(2, 1.0, 1.0), UnsupportedCombination);
}

TEST_CASE("rate and period accessors")
{
    auto const p = SearchSpec::poisson(1, 1.0, 0.3);
    CHECK(p.rate() == 0.3);
    CHECK_THROWS_AS(p.period(), InvalidArgument);
    auto const b = SearchSpec::bridge(3, 2.0, 12.0, 0.05);
    CHECK(b.period() == 12.0);
    CHECK(b.detection_radius() == 0.05);
    CHECK_THROWS_AS(b.rate(), InvalidArgument);
}

TEST_CASE("mechanism names round-trip")
{
    for (auto m : {Mechanism::poisson, Mechanism::periodic, Mechanism::bridge})
        CHECK(parse_mechanism(to_string(m)) == m);
    CHECK_THROWS_AS(parse_mechanism("levy"), InvalidArgument);
}

TEST_CASE("to_dimensionless examples")
{
    CHECK(to_dimensionless(SearchSpec::poisson(1, 1, 1), 1).value == 1.0);
    CHECK(to_dimensionless(SearchSpec::poisson(1, 2, 0.491), 2).value
          == doctest::Approx(0.491).epsilon(1e-15));
    CHECK(to_dimensionless(SearchSpec::bridge(1, 1, 10.136), 1).value
          == doctest::Approx(10.136).epsilon(1e-15));
    CHECK_THROWS_AS(to_dimensionless(SearchSpec::poisson(1, 1, 1), 0.0),
                    InvalidArgument);
    CHECK_THROWS_AS(to_dimensionless(SearchSpec::poisson(1, 1, 1), -2.0),
                    InvalidArgument);
}

TEST_CASE("dimensionless round trip")
{
    for (double D : {0.1, 1.0, 7.0})
        for (double s2 : {0.01, 1.0, 3.3})
            for (double x : {1e-3, 0.738, 12.0, 250.0})
            {
                auto const pr = SearchSpec::poisson(1, D, x);
                double const s = to_dimensionless(pr, s2).value;
                CHECK(std::fabs(from_dimensionless(Mechanism::poisson, s, D, s2) / x
                                - 1)
                      <= 1e-14);
                auto const pe = SearchSpec::periodic(1, D, x);
                double const t = to_dimensionless(pe, s2).value;
                CHECK(std::fabs(from_dimensionless(Mechanism::periodic, t, D, s2) / x
                                - 1)
                      <= 1e-14);
            }
}

TEST_CASE("expected time variants")
{
    auto const f = ExpectedTime::finite(2.5);
    CHECK(f.is_finite());
    CHECK(f.value() == 2.5);
    CHECK(f.scaled(2).value() == 5.0);
    auto const d = ExpectedTime::divergent();
    CHECK(d.is_divergent());
    CHECK(std::isinf(d.value_or_inf()));
    CHECK_THROWS_AS(d.value(), Error);
    CHECK(d.scaled(3).is_divergent());
    CHECK_THROWS_AS(ExpectedTime::finite(-1), InvalidArgument);
    CHECK_THROWS_AS(ExpectedTime::finite(NAN), InvalidArgument);
}

TEST_CASE("targets")
{
    auto const g = TargetSpec::gaussian(2.0);
    CHECK(g.is_gaussian());
    CHECK(g.variance() == 2.0);
    CHECK_THROWS_AS(TargetSpec::gaussian(0.0), InvalidArgument);
    auto const f = TargetSpec::fixed({3, 4, 0});
    CHECK(f.is_fixed());
    CHECK(norm(f.point(), 2) == 5.0);
    CHECK(norm(TargetSpec::fixed_at(-2).point(), 1) == 2.0);
}

TEST_CASE("mc estimate bias flag")
{
    McEstimate e;
    e.censored_fraction = 0.0005;
    CHECK_FALSE(e.bias_warning());
    e.censored_fraction = 0.002;
    CHECK(e.bias_warning());
}
