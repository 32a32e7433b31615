#include "reset_search/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "reset_search/specfun.hpp"

namespace rsearch::analytic {
namespace {

using specfun::gaussian_tail;
using std::numbers::pi;

double const kSqrt2Pi = std::sqrt(2.0 * pi);

void require_positive(double value, char const* name)
{
    if (!(value > 0) || !std::isfinite(value))
        throw InvalidArgument(std::string(name) + " must be positive");
}

void require_outside_ball(double distance, double eps0)
{
    require_positive(eps0, "detection radius");
    if (!(distance > eps0))
        throw InvalidArgument("target must lie outside the detection ball");
}

bool diverges(double script_t, double threshold)
{
    return script_t <= threshold + kDivergenceGuard;
}

// Expected time for a mechanism that repeats independent cycles of length T,
// each succeeding with probability p, where a successful cycle ends on
// average `hit_time` after its start.
ExpectedTime renewal_time(double period, double p, double hit_time)
{
    return ExpectedTime::finite(period * (1.0 / p - 1.0) + hit_time);
}

}  // namespace

//---------------------------------------------------------------------------//
// Fixed target
//---------------------------------------------------------------------------//

ExpectedTime poisson_fixed_1d(double rate, double diffusion, double a)
{
    require_positive(rate, "reset rate");
    require_positive(diffusion, "diffusion coefficient");
    return ExpectedTime::finite(
        std::expm1(std::sqrt(2.0 * rate / diffusion) * std::fabs(a)) / rate);
}

ExpectedTime poisson_fixed_2d(double rate, double diffusion, double distance,
                              double eps0)
{
    require_positive(rate, "reset rate");
    require_positive(diffusion, "diffusion coefficient");
    require_outside_ball(distance, eps0);
    double const k = std::sqrt(rate / diffusion);
    // K₀(kε₀)/K₀(k|a|) through the scaled function to avoid underflow.
    double const ratio = specfun::bessel_k0_scaled(k * eps0)
                         / specfun::bessel_k0_scaled(k * distance)
                         * std::exp(k * (distance - eps0));
    return ExpectedTime::finite((ratio - 1.0) / rate);
}

ExpectedTime poisson_fixed_3d(double rate, double diffusion, double distance,
                              double eps0)
{
    require_positive(rate, "reset rate");
    require_positive(diffusion, "diffusion coefficient");
    require_outside_ball(distance, eps0);
    double const k = std::sqrt(rate / diffusion);
    return ExpectedTime::finite(
        (distance / eps0 * std::exp(k * (distance - eps0)) - 1.0) / rate);
}

ExpectedTime poisson_fixed_bessel(int dimension, double rate, double diffusion,
                                  double distance, double eps0)
{
    require_positive(rate, "reset rate");
    require_positive(diffusion, "diffusion coefficient");
    require_outside_ball(distance, eps0);
    double const k = std::sqrt(rate / diffusion);
    double ratio = 0;
    if (dimension == 2)
    {
        ratio = specfun::bessel_k0(k * eps0) / specfun::bessel_k0(k * distance);
    }
    else if (dimension == 3)
    {
        ratio = std::pow(eps0 / distance, -0.5)
                * specfun::bessel_k_minus_half(k * eps0)
                / specfun::bessel_k_minus_half(k * distance);
    }
    else
    {
        throw UnsupportedCombination("Bessel formula covers dimensions 2 and 3");
    }
    return ExpectedTime::finite((ratio - 1.0) / rate);
}

double bridge_crossing_prob(double period, double diffusion, double a)
{
    require_positive(period, "bridge period");
    require_positive(diffusion, "diffusion coefficient");
    return std::exp(-2.0 * a * a / (diffusion * period));
}

ExpectedTime bridge_fixed_1d(double period, double diffusion, double a)
{
    require_positive(period, "bridge period");
    require_positive(diffusion, "diffusion coefficient");
    double const b = std::fabs(a);
    double const growth = std::exp(2.0 * b * b / (diffusion * period));
    // e^{2a²/(TD)}·∫_{|a|}^∞ e^{−2x²/(TD)} dx, as erfcx so far targets stay finite.
    double const scale = std::sqrt(period * diffusion) / 2.0;
    double const weighted_tail
        = scale * kSqrt2Pi * 0.5 * specfun::erfcx(b / (scale * std::sqrt(2.0)));
    return ExpectedTime::finite(period * (growth - 1.0)
                                + 2.0 * b / diffusion * weighted_tail);
}

double fpt_density_1d(double t, double a, double diffusion)
{
    require_positive(t, "time");
    require_positive(diffusion, "diffusion coefficient");
    double const b = std::fabs(a);
    if (b == 0)
        return 0.0;
    // Log space: t^{-3/2} overflows before the exponential underflows.
    return b / std::sqrt(2.0 * pi * diffusion)
           * std::exp(-b * b / (2.0 * diffusion * t) - 1.5 * std::log(t));
}

double bridge_fpt_subdensity_1d(double t, double a, double diffusion,
                                double period)
{
    require_positive(period, "bridge period");
    require_positive(diffusion, "diffusion coefficient");
    if (!(t > 0 && t < period))
        throw InvalidArgument("sub-density is defined for 0 < t < T");
    double const b = std::fabs(a);
    double const remaining = 1.0 - t / period;
    if (b == 0)
        return 0.0;
    return b / std::sqrt(2.0 * pi * diffusion * remaining)
           * std::exp(-b * b / (2.0 * diffusion * t * remaining) - 1.5 * std::log(t));
}

double fpt_subdensity_3d(double t, double distance, double eps0,
                         double diffusion)
{
    require_positive(t, "time");
    require_positive(diffusion, "diffusion coefficient");
    require_outside_ball(distance, eps0);
    double const gap = distance - eps0;
    return eps0 / distance * gap / std::sqrt(2.0 * pi * diffusion)
           * std::exp(-gap * gap / (2.0 * diffusion * t) - 1.5 * std::log(t));
}

TimeBounds bridge_fixed_3d_bounds(double period, double diffusion,
                                  double distance, double eps0)
{
    require_positive(period, "bridge period");
    require_positive(diffusion, "diffusion coefficient");
    require_outside_ball(distance, eps0);
    double const a = distance;
    double const e = eps0;
    double const dt = diffusion * period;
    double const upper
        = period * ((a + e) / (a - e) * a / (2.0 * e)
                        * std::exp(2.0 * (a + e) * (a + e) / dt)
                    - 1.0)
          + period * (a + e) / (2.0 * (a - e)) * std::exp(8.0 * a * e / dt);
    double const lower
        = period * (a / (2.0 * e) * std::exp(2.0 * (a - e) * (a - e) / dt) - 1.0)
          + period * (a - e) / (2.0 * (a + e)) * std::exp(-8.0 * a * e / dt);
    // The lower bound can dip below zero when |a| < 2ε₀.
    return {ExpectedTime::finite(std::max(lower, 0.0)),
            ExpectedTime::finite(upper)};
}

double inverse_time_integral_32(double c, double period)
{
    require_positive(c, "exponent scale");
    require_positive(period, "period");
    return std::sqrt(pi / c) * std::erfc(std::sqrt(c / period));
}

double inverse_time_integral_12(double c, double period)
{
    require_positive(c, "exponent scale");
    require_positive(period, "period");
    return 2.0 * std::sqrt(period) * std::exp(-c / period)
           - 2.0 * c * inverse_time_integral_32(c, period);
}

double periodic_conditional_hit_time(double c, double period)
{
    require_positive(period, "period");
    if (c == 0)
        return 0;
    require_positive(c, "exponent scale");
    return 2.0 * c * specfun::erfcx_inverse_excess(std::sqrt(c / period));
}

ExpectedTime periodic_fixed_1d(double period, double diffusion, double a)
{
    require_positive(period, "reset period");
    require_positive(diffusion, "diffusion coefficient");
    if (a == 0 || !std::isfinite(a))
        throw InvalidArgument("periodic formula requires a nonzero target");
    double const b = std::fabs(a);
    double const p = std::erfc(b / std::sqrt(2.0 * diffusion * period));
    double const c = b * b / (2.0 * diffusion);
    return renewal_time(period, p, periodic_conditional_hit_time(c, period));
}

ExpectedTime periodic_fixed_3d(double period, double diffusion,
                               double distance, double eps0)
{
    require_positive(period, "reset period");
    require_positive(diffusion, "diffusion coefficient");
    require_outside_ball(distance, eps0);
    double const gap = distance - eps0;
    double const p = eps0 / distance
                     * std::erfc(gap / std::sqrt(2.0 * diffusion * period));
    double const c = gap * gap / (2.0 * diffusion);
    return renewal_time(period, p, periodic_conditional_hit_time(c, period));
}

//---------------------------------------------------------------------------//
// Gaussian target, dimensionless
//---------------------------------------------------------------------------//

double gauss_poisson_1d(double s)
{
    require_positive(s, "dimensionless rate");
    return (2.0 * std::exp(s) * gaussian_tail(-std::sqrt(2.0 * s)) - 1.0) / s;
}

ExpectedTime gauss_bridge_1d(double script_t)
{
    require_positive(script_t, "dimensionless period");
    if (diverges(script_t, 4.0))
        return ExpectedTime::divergent();
    double const t = script_t;
    return ExpectedTime::finite(t * std::sqrt(t / (t - 4.0)) - t
                                + t / (2.0 + std::sqrt(t)));
}

ExpectedTime gauss_periodic_1d(double script_t, quad::QuadSettings const& q)
{
    require_positive(script_t, "dimensionless period");
    if (diverges(script_t, 1.0))
        return ExpectedTime::divergent();
    double const t = script_t;

    // Mean hit time within the successful period, averaged over |a| = x.
    auto const conditional = quad::integrate_semiinfinite(
        [t](double x) {
            return periodic_conditional_hit_time(0.5 * x * x, t)
                   * std::exp(-0.5 * x * x);
        },
        0.0, q);

    // Mean number of failed periods. With κ = 1 − 1/𝒯 and x = w/√κ the
    // weight e^{−x²/2}/erfc(x/√(2𝒯)) becomes e^{−w²/2}/erfcx(·).
    double const kappa = 1.0 - 1.0 / t;
    double const arg_scale = 1.0 / std::sqrt(2.0 * t * kappa);
    auto const failures = quad::integrate_semiinfinite(
        [arg_scale](double w) {
            return std::exp(-0.5 * w * w)
                   / (kSqrt2Pi * specfun::erfcx(w * arg_scale));
        },
        0.0, q);

    double const value = 2.0 / kSqrt2Pi * conditional.value
                         + 2.0 * t * failures.value / std::sqrt(kappa) - t;
    return ExpectedTime::finite(value);
}

double gauss_poisson_3d(double s, quad::QuadSettings const& q)
{
    require_positive(s, "dimensionless rate");
    double const root = std::sqrt(s);
    auto const moment = quad::integrate_semiinfinite(
        [root](double x) { return x * x * x * std::exp(root * x - 0.5 * x * x); },
        0.0, q);
    return 2.0 / (kSqrt2Pi * s) * moment.value;
}

ExpectedTime gauss_bridge_3d(double script_t)
{
    require_positive(script_t, "dimensionless period");
    if (diverges(script_t, 4.0))
        return ExpectedTime::divergent();
    double const t = script_t;
    return ExpectedTime::finite(2.0 * t * t * t
                                / (kSqrt2Pi * (t - 4.0) * (t - 4.0)));
}

ExpectedTime gauss_periodic_3d(double script_t, quad::QuadSettings const& q)
{
    require_positive(script_t, "dimensionless period");
    if (diverges(script_t, 1.0))
        return ExpectedTime::divergent();
    double const t = script_t;
    double const kappa = 1.0 - 1.0 / t;
    double const arg_scale = 1.0 / std::sqrt(2.0 * t * kappa);
    // x³ e^{−x²/2}/(√(2π) erfc(x/√(2𝒯))) under x = w/√κ.
    auto const integral = quad::integrate_semiinfinite(
        [arg_scale](double w) {
            return w * w * w * std::exp(-0.5 * w * w)
                   / (kSqrt2Pi * specfun::erfcx(w * arg_scale));
        },
        0.0, q);
    return ExpectedTime::finite(2.0 * t * integral.value / (kappa * kappa));
}

double gauss_poisson_2d(double s, quad::QuadSettings const& q)
{
    require_positive(s, "dimensionless rate");
    double const root = std::sqrt(s);
    // 1/K₀(z) = e^{z}/k0_scaled(z).
    auto const integral = quad::integrate_semiinfinite(
        [root](double x) {
            double const z = root * x;
            return x * std::exp(z - 0.5 * x * x) / specfun::bessel_k0_scaled(z);
        },
        0.0, q);
    return integral.value / s;
}

ExpectedTime gauss_dimensionless(int dimension, Mechanism mechanism,
                                 double value, quad::QuadSettings const& q)
{
    switch (dimension)
    {
        case 1:
            switch (mechanism)
            {
                case Mechanism::poisson:
                    return ExpectedTime::finite(gauss_poisson_1d(value));
                case Mechanism::bridge:
                    return gauss_bridge_1d(value);
                case Mechanism::periodic:
                    return gauss_periodic_1d(value, q);
            }
            break;
        case 2:
            if (mechanism == Mechanism::poisson)
                return ExpectedTime::finite(gauss_poisson_2d(value, q));
            throw UnsupportedCombination(
                "no two-dimensional formula for " + std::string(to_string(mechanism))
                + " reset");
        case 3:
            switch (mechanism)
            {
                case Mechanism::poisson:
                    return ExpectedTime::finite(gauss_poisson_3d(value, q));
                case Mechanism::bridge:
                    return gauss_bridge_3d(value);
                case Mechanism::periodic:
                    return gauss_periodic_3d(value, q);
            }
            break;
        default:
            break;
    }
    throw InvalidArgument("dimension must be 1, 2 or 3");
}

//---------------------------------------------------------------------------//
// Gaussian target, dimensional
//---------------------------------------------------------------------------//

ExpectedTime gauss_poisson_1d_dimensional(double rate, double diffusion,
                                          double sigma2)
{
    require_positive(rate, "reset rate");
    require_positive(diffusion, "diffusion coefficient");
    require_positive(sigma2, "target variance");
    double const sigma = std::sqrt(sigma2);
    return ExpectedTime::finite(
        (2.0 * std::exp(rate * sigma2 / diffusion)
             * gaussian_tail(-std::sqrt(2.0 * rate / diffusion) * sigma)
         - 1.0)
        / rate);
}

ExpectedTime gauss_bridge_1d_dimensional(double period, double diffusion,
                                         double sigma2)
{
    require_positive(period, "bridge period");
    require_positive(diffusion, "diffusion coefficient");
    require_positive(sigma2, "target variance");
    double const dt = diffusion * period;
    if (dt <= (4.0 + kDivergenceGuard) * sigma2)
        return ExpectedTime::divergent();
    double const sigma = std::sqrt(sigma2);
    return ExpectedTime::finite(period * std::sqrt(dt / (dt - 4.0 * sigma2))
                                - period
                                + period * sigma / (std::sqrt(dt) + 2.0 * sigma));
}

ExpectedTime gauss_periodic_1d_dimensional(double period, double diffusion,
                                           double sigma2,
                                           quad::QuadSettings const& q)
{
    require_positive(period, "reset period");
    require_positive(diffusion, "diffusion coefficient");
    require_positive(sigma2, "target variance");
    if (diffusion * period <= (1.0 + kDivergenceGuard) * sigma2)
        return ExpectedTime::divergent();
    double const sigma = std::sqrt(sigma2);
    double const exponent_scale = sigma2 / (2.0 * diffusion);

    auto const conditional = quad::integrate_semiinfinite(
        [&](double x) {
            return periodic_conditional_hit_time(exponent_scale * x * x, period)
                   * std::exp(-0.5 * x * x);
        },
        0.0, q);

    // 1/erfc(y) = e^{y²}/erfcx(y) keeps the weight finite for large x.
    double const y_scale = sigma / std::sqrt(2.0 * diffusion * period);
    auto const failures = quad::integrate_semiinfinite(
        [y_scale](double x) {
            double const y = y_scale * x;
            return std::exp(-0.5 * x * x + y * y)
                   / (kSqrt2Pi * specfun::erfcx(y));
        },
        0.0, q);

    double const value
        = 2.0 / kSqrt2Pi * conditional.value
          + period * (2.0 * failures.value - 1.0);
    return ExpectedTime::finite(value);
}

ExpectedTime gauss_poisson_3d_dimensional(double rate, double diffusion,
                                          double sigma2,
                                          quad::QuadSettings const& q)
{
    require_positive(rate, "reset rate");
    require_positive(diffusion, "diffusion coefficient");
    require_positive(sigma2, "target variance");
    double const sigma = std::sqrt(sigma2);
    double const slope = std::sqrt(rate / diffusion) * sigma;
    auto const moment = quad::integrate_semiinfinite(
        [slope](double x) {
            return x * x * x * std::exp(slope * x) * std::exp(-0.5 * x * x);
        },
        0.0, q);
    return ExpectedTime::finite(2.0 * sigma / (kSqrt2Pi * rate) * moment.value);
}

ExpectedTime gauss_bridge_3d_dimensional(double period, double diffusion,
                                         double sigma2)
{
    require_positive(period, "bridge period");
    require_positive(diffusion, "diffusion coefficient");
    require_positive(sigma2, "target variance");
    double const dt = diffusion * period;
    if (dt <= (4.0 + kDivergenceGuard) * sigma2)
        return ExpectedTime::divergent();
    double const sigma = std::sqrt(sigma2);
    double const gap = dt - 4.0 * sigma2;
    return ExpectedTime::finite(2.0 * period * period * period * diffusion
                                * diffusion * sigma / (kSqrt2Pi * gap * gap));
}

ExpectedTime gauss_periodic_3d_dimensional(double period, double diffusion,
                                           double sigma2,
                                           quad::QuadSettings const& q)
{
    require_positive(period, "reset period");
    require_positive(diffusion, "diffusion coefficient");
    require_positive(sigma2, "target variance");
    if (diffusion * period <= (1.0 + kDivergenceGuard) * sigma2)
        return ExpectedTime::divergent();
    double const sigma = std::sqrt(sigma2);
    double const y_scale = sigma / std::sqrt(2.0 * diffusion * period);
    auto const integral = quad::integrate_semiinfinite(
        [y_scale](double x) {
            double const y = y_scale * x;
            return x * x * x * std::exp(-0.5 * x * x + y * y)
                   / (kSqrt2Pi * specfun::erfcx(y));
        },
        0.0, q);
    return ExpectedTime::finite(2.0 * period * sigma * integral.value);
}

ExpectedTime gauss_poisson_2d_dimensional(double rate, double diffusion,
                                          double sigma2,
                                          quad::QuadSettings const& q)
{
    require_positive(rate, "reset rate");
    require_positive(diffusion, "diffusion coefficient");
    require_positive(sigma2, "target variance");
    double const slope = std::sqrt(rate / diffusion) * std::sqrt(sigma2);
    auto const integral = quad::integrate_semiinfinite(
        [slope](double x) {
            double const z = slope * x;
            return x * std::exp(-0.5 * x * x) * std::exp(z)
                   / specfun::bessel_k0_scaled(z);
        },
        0.0, q);
    return ExpectedTime::finite(integral.value / rate);
}

//---------------------------------------------------------------------------//
// Query dispatch
//---------------------------------------------------------------------------//

std::string_view to_string(Units u)
{
    switch (u)
    {
        case Units::time:
            return "time";
        case Units::sigma2_over_diffusion:
            return "sigma2_over_D";
        case Units::sigma3_over_diffusion:
            return "sigma3_over_D";
    }
    return "unknown";
}

std::string_view to_string(Provenance p)
{
    switch (p)
    {
        case Provenance::closed_form:
            return "analytic-closed-form";
        case Provenance::quadrature:
            return "quadrature";
        case Provenance::monte_carlo:
            return "monte-carlo";
    }
    return "unknown";
}

std::string_view to_string(Eps0Scaling s)
{
    switch (s)
    {
        case Eps0Scaling::none:
            return "none";
        case Eps0Scaling::eps0_times_expectation:
            return "lim eps0*E";
        case Eps0Scaling::expectation_over_abs_log_eps0:
            return "lim E/|log eps0|";
    }
    return "unknown";
}

Units gauss_units(int dimension)
{
    return dimension == 3 ? Units::sigma3_over_diffusion
                          : Units::sigma2_over_diffusion;
}

Eps0Scaling gauss_scaling(int dimension)
{
    switch (dimension)
    {
        case 2:
            return Eps0Scaling::expectation_over_abs_log_eps0;
        case 3:
            return Eps0Scaling::eps0_times_expectation;
        default:
            return Eps0Scaling::none;
    }
}

Provenance gauss_provenance(int dimension, Mechanism mechanism)
{
    if (mechanism == Mechanism::bridge)
        return Provenance::closed_form;
    if (mechanism == Mechanism::poisson && dimension == 1)
        return Provenance::closed_form;
    return Provenance::quadrature;
}

GaussResult gauss_expected_time(GaussQuery const& query,
                                quad::QuadSettings const& q)
{
    SearchSpec const& spec = query.spec;
    DimensionlessParams const params = to_dimensionless(spec, query.sigma2);
    int const dim = spec.dimension();
    ExpectedTime const coefficient
        = gauss_dimensionless(dim, spec.mechanism(), params.value, q);

    double const sigma = std::sqrt(query.sigma2);
    double const unit = (dim == 3 ? query.sigma2 * sigma : query.sigma2)
                        / spec.diffusion();
    return {coefficient.scaled(unit),
            coefficient,
            params.value,
            gauss_units(dim),
            gauss_provenance(dim, spec.mechanism()),
            gauss_scaling(dim)};
}

}  // namespace rsearch::analytic
