#include <cmath>
#include <limits>
#include <numbers>

#include "reset_search/analytic.hpp"
#include "reset_search/kernels.hpp"

namespace rsearch::kernels::detail {

void affine_step_scalar(double* x, double const* m, double const* s,
                        double const* z, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        x[i] = x[i] * m[i] + s[i] * z[i];
}

void target_gap_scalar(int dim, Axes position, Axes target, double* out,
                       std::size_t n)
{
    if (dim == 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = target[0][i] - position[0][i];
        return;
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        double sum = 0;
        for (int c = 0; c < dim; ++c)
        {
            double const d = position[c][i] - target[c][i];
            sum = sum + d * d;
        }
        out[i] = std::sqrt(sum);
    }
}

// Same operation order as the analytic closed forms so that results agree
// bit for bit.
void bridge_curve_scalar(int dim, double const* script_t, double* out,
                         std::size_t n)
{
    double const inf = std::numeric_limits<double>::infinity();
    double const threshold = 4.0 + analytic::kDivergenceGuard;
    double const root_two_pi = std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < n; ++i)
    {
        double const t = script_t[i];
        if (!(t > threshold))
            out[i] = inf;
        else if (dim == 1)
            out[i] = t * std::sqrt(t / (t - 4.0)) - t + t / (2.0 + std::sqrt(t));
        else
            out[i] = 2.0 * t * t * t / (root_two_pi * (t - 4.0) * (t - 4.0));
    }
}

}  // namespace rsearch::kernels::detail
