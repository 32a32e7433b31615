#include "reset_search/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace rsearch::quad {
namespace {

constexpr double kTruncationCap = 45.0;

// Kronrod abscissae on [-1, 1] (positive half, descending) and weights;
// every second abscissa is a 10-point Gauss node.
constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478542, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment
{
    double lo;
    double hi;
    double value;
    double error;

    bool operator<(Segment const& other) const { return error < other.error; }
};

// One Gauss–Kronrod 21-point panel with the QUADPACK error heuristic.
template<class F>
Segment gk21(F const& g, double lo, double hi)
{
    double const center = 0.5 * (lo + hi);
    double const half = 0.5 * (hi - lo);
    double const fc = g(center);
    double resk = fc * kWgk[10];
    double resabs = std::fabs(resk);
    double resg = 0;
    double fv1[10];
    double fv2[10];
    for (int j = 0; j < 10; ++j)
    {
        double const dx = half * kXgk[j];
        double const f1 = g(center - dx);
        double const f2 = g(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1)
            resg += kWg[j / 2] * (f1 + f2);
    }
    double const reskh = 0.5 * resk;
    double resasc = kWgk[10] * std::fabs(fc - reskh);
    for (int j = 0; j < 10; ++j)
        resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

    double const result = resk * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0 && err != 0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    double const eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50 * eps))
        err = std::max(50 * eps * resabs, err);
    return {lo, hi, result, err};
}

}  // namespace

void QuadSettings::validate() const
{
    if (!(rel_tol > 0) || !(abs_tol > 0))
        throw InvalidArgument("quadrature tolerances must be positive");
    if (max_evaluations < 100)
        throw InvalidArgument("quadrature budget must allow 100 evaluations");
}

QuadResult integrate_finite(Integrand const& f, double a, double b,
                            QuadSettings const& settings)
{
    settings.validate();
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw InvalidArgument("integrate_finite requires finite a < b");

    double const width = b - a;
    long evaluations = 0;
    auto mapped = [&](double u) {
        ++evaluations;
        double const w = u * u * (3.0 - 2.0 * u);
        double const jac = 6.0 * u * (1.0 - u);
        double const x = a + width * w;
        double const fx = f(x);
        if (!std::isfinite(fx))
            throw NonConvergence("integrand is not finite at x = "
                                     + std::to_string(x),
                                 std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::infinity());
        return fx * jac * width;
    };

    std::priority_queue<Segment> heap;
    constexpr int kInitialPanels = 4;
    for (int i = 0; i < kInitialPanels; ++i)
        heap.push(gk21(mapped, double(i) / kInitialPanels,
                       double(i + 1) / kInitialPanels));

    auto totals = [&heap] {
        // Sum over a copy so the estimate does not depend on update history.
        auto copy = heap;
        double value = 0;
        double error = 0;
        while (!copy.empty())
        {
            value += copy.top().value;
            error += copy.top().error;
            copy.pop();
        }
        return std::pair{value, error};
    };

    double value = 0;
    double error = 0;
    std::tie(value, error) = totals();
    while (error > std::max(settings.abs_tol, settings.rel_tol * std::fabs(value)))
    {
        Segment worst = heap.top();
        double const mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi)
            || evaluations + 42 > settings.max_evaluations)
        {
            throw NonConvergence("adaptive quadrature did not converge: error "
                                     + std::to_string(error) + " after "
                                     + std::to_string(evaluations)
                                     + " evaluations",
                                 value, error);
        }
        heap.pop();
        Segment left = gk21(mapped, worst.lo, mid);
        Segment right = gk21(mapped, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if (error <= std::max(settings.abs_tol, settings.rel_tol * std::fabs(value)))
            std::tie(value, error) = totals();
    }
    return {value, error, evaluations};
}

double gaussian_truncation_point(double abs_tol)
{
    if (!(abs_tol > 0) || !(abs_tol < 1))
        throw InvalidArgument("truncation tolerance must lie in (0, 1)");
    double const rhs = -std::log(abs_tol);
    double x = std::sqrt(2.0 * rhs);
    for (int i = 0; i < 50; ++i)
        x = std::sqrt(2.0 * (rhs + 3.0 * std::log(std::max(x, 1.0))));
    return std::min(x, kTruncationCap);
}

QuadResult integrate_semiinfinite(Integrand const& f, double a,
                                  QuadSettings const& settings)
{
    settings.validate();
    if (!std::isfinite(a))
        throw InvalidArgument("integrate_semiinfinite requires a finite start");

    double upper = std::max(gaussian_truncation_point(settings.abs_tol), a + 1.0);

    // Coarse scan for the integrand's scale, then push the cutoff out until
    // the integrand is negligible against both tolerances.
    long scan_evaluations = 0;
    double peak = 0;
    constexpr int kScan = 64;
    for (int i = 1; i < kScan; ++i)
    {
        double const x = a + (upper - a) * i / kScan;
        peak = std::max(peak, std::fabs(f(x)));
        ++scan_evaluations;
    }
    double const negligible
        = 1e-3 * std::max(settings.abs_tol, settings.rel_tol * peak);
    while (upper < kTruncationCap)
    {
        double const fu = std::fabs(f(upper));
        ++scan_evaluations;
        peak = std::max(peak, fu);
        if (fu <= negligible)
            break;
        upper = std::min(upper + 1.0, kTruncationCap);
    }

    QuadResult result = integrate_finite(f, a, upper, settings);
    result.evaluations += scan_evaluations;
    return result;
}

}  // namespace rsearch::quad
