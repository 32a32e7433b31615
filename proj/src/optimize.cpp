#include "reset_search/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reset_search/analytic.hpp"

namespace rsearch::optimize {
namespace {

constexpr int kCoarseProbes = 64;

std::vector<double> log_grid(Bracket b, int n)
{
    std::vector<double> grid(n);
    double const llo = std::log(b.lo);
    double const lhi = std::log(b.hi);
    for (int i = 0; i < n; ++i)
        grid[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    grid.front() = b.lo;
    grid.back() = b.hi;
    return grid;
}

void validate(Bracket b)
{
    if (!(b.lo < b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi))
        throw BracketTooNarrow("search bracket must satisfy lo < hi");
    if (!(b.lo > 0))
        throw InvalidArgument("search bracket must be positive");
}

}  // namespace

Optimum minimize_scalar(Objective const& f, Bracket bracket, double x_tol)
{
    validate(bracket);
    if (!(x_tol > 0))
        throw InvalidArgument("x_tol must be positive");

    int evaluations = 0;
    auto eval = [&](double x) {
        ++evaluations;
        return f(x).value_or_inf();
    };

    auto const grid = log_grid(bracket, kCoarseProbes);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = eval(grid[i]);

    auto const best = std::min_element(values.begin(), values.end());
    if (!std::isfinite(*best))
        throw NoFiniteValue("objective is divergent on every probe");
    auto const ibest = static_cast<std::size_t>(best - values.begin());

    double a = grid[ibest == 0 ? 0 : ibest - 1];
    double b = grid[std::min(ibest + 1, grid.size() - 1)];

    double const invphi = (std::sqrt(5.0) - 1) / 2;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    while (b - a > x_tol)
    {
        if (fc < fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = eval(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = eval(d);
        }
    }

    Optimum result;
    result.argmin = 0.5 * (a + b);
    result.min_value = eval(result.argmin);
    result.x_tolerance = b - a;
    result.function_evaluations = evaluations;
    if (!std::isfinite(result.min_value))
        throw NoFiniteValue("objective is divergent at the refined minimum");
    return result;
}

UnimodalityReport check_unimodal(Objective const& f, Bracket bracket,
                                 int points)
{
    validate(bracket);
    if (points < 3)
        throw InvalidArgument("unimodality check needs at least 3 points");
    auto const grid = log_grid(bracket, points);
    int last_sign = 0;
    int changes = 0;
    double prev = f(grid[0]).value_or_inf();
    for (int i = 1; i < points; ++i)
    {
        double const cur = f(grid[i]).value_or_inf();
        int sign = 0;
        if (std::isinf(prev) && std::isinf(cur))
            sign = 0;
        else if (cur < prev)
            sign = -1;
        else if (cur > prev)
            sign = 1;
        if (sign != 0)
        {
            if (last_sign != 0 && sign != last_sign)
                ++changes;
            last_sign = sign;
        }
        prev = cur;
    }
    return {changes == 1, changes};
}

Bracket default_bracket(Mechanism mechanism)
{
    switch (mechanism)
    {
        case Mechanism::poisson:
            return {1e-4, 20.0};
        case Mechanism::bridge:
            return {4.0 + 1e-6, 100.0};
        case Mechanism::periodic:
            return {1.0 + 1e-6, 50.0};
    }
    throw InvalidArgument("unknown mechanism");
}

Objective gauss_objective(int dimension, Mechanism mechanism)
{
    // Validate the combination once, up front.
    if (dimension == 2 && mechanism != Mechanism::poisson)
        throw UnsupportedCombination(
            "two-dimensional search supports only Poissonian reset");
    if (dimension < 1 || dimension > 3)
        throw InvalidArgument("dimension must be 1, 2 or 3");
    return [dimension, mechanism](double x) {
        return analytic::gauss_dimensionless(dimension, mechanism, x);
    };
}

std::vector<OptimalConstant> optimal_constants()
{
    struct Row
    {
        char const* id;
        int dim;
        Mechanism mech;
        double reference_argmin;
        double reference_min;
    };
    static constexpr Row rows[] = {
        {"gauss_poisson_1d", 1, Mechanism::poisson, 0.491, 3.548},
        {"gauss_bridge_1d", 1, Mechanism::bridge, 10.136, 4.847},
        {"gauss_periodic_1d", 1, Mechanism::periodic, 2.82, 3.35},
        {"gauss_poisson_3d", 3, Mechanism::poisson, 0.738, 13.09},
        {"gauss_bridge_3d", 3, Mechanism::bridge, 12.00, 21.54},
        {"gauss_periodic_3d", 3, Mechanism::periodic, 4.13, 22.775},
        {"gauss_poisson_2d", 2, Mechanism::poisson, 0.713, 4.77},
    };
    std::vector<OptimalConstant> table;
    for (Row const& row : rows)
    {
        Bracket const bracket = default_bracket(row.mech);
        table.push_back({row.id, row.dim, row.mech, bracket,
                         row.reference_argmin, row.reference_min,
                         minimize_scalar(gauss_objective(row.dim, row.mech),
                                         bracket)});
    }
    return table;
}

}  // namespace rsearch::optimize
