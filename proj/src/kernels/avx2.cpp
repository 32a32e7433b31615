#include <immintrin.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "reset_search/analytic.hpp"
#include "reset_search/kernels.hpp"

namespace rsearch::kernels::detail {

void affine_step_avx2(double* x, double const* m, double const* s,
                      double const* z, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        __m256d const xm = _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                         _mm256_loadu_pd(m + i));
        __m256d const sz = _mm256_mul_pd(_mm256_loadu_pd(s + i),
                                         _mm256_loadu_pd(z + i));
        _mm256_storeu_pd(x + i, _mm256_add_pd(xm, sz));
    }
    affine_step_scalar(x + i, m + i, s + i, z + i, n - i);
}

void target_gap_avx2(int dim, Axes position, Axes target, double* out,
                     std::size_t n)
{
    std::size_t i = 0;
    if (dim == 1)
    {
        for (; i + 4 <= n; i += 4)
            _mm256_storeu_pd(out + i,
                             _mm256_sub_pd(_mm256_loadu_pd(target[0] + i),
                                           _mm256_loadu_pd(position[0] + i)));
    }
    else
    {
        for (; i + 4 <= n; i += 4)
        {
            __m256d sum = _mm256_setzero_pd();
            for (int c = 0; c < dim; ++c)
            {
                __m256d const d
                    = _mm256_sub_pd(_mm256_loadu_pd(position[c] + i),
                                    _mm256_loadu_pd(target[c] + i));
                sum = _mm256_add_pd(sum, _mm256_mul_pd(d, d));
            }
            _mm256_storeu_pd(out + i, _mm256_sqrt_pd(sum));
        }
    }
    Axes p = position;
    Axes t = target;
    for (int c = 0; c < dim; ++c)
    {
        p[c] += i;
        t[c] += i;
    }
    target_gap_scalar(dim, p, t, out + i, n - i);
}

void bridge_curve_avx2(int dim, double const* script_t, double* out,
                       std::size_t n)
{
    __m256d const inf
        = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d const threshold = _mm256_set1_pd(4.0 + analytic::kDivergenceGuard);
    __m256d const four = _mm256_set1_pd(4.0);
    __m256d const two = _mm256_set1_pd(2.0);
    __m256d const root_two_pi
        = _mm256_set1_pd(std::sqrt(2.0 * std::numbers::pi));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        __m256d const t = _mm256_loadu_pd(script_t + i);
        __m256d const gap = _mm256_sub_pd(t, four);
        __m256d value;
        if (dim == 1)
        {
            __m256d const a = _mm256_mul_pd(
                t, _mm256_sqrt_pd(_mm256_div_pd(t, gap)));
            __m256d const b = _mm256_div_pd(
                t, _mm256_add_pd(two, _mm256_sqrt_pd(t)));
            value = _mm256_add_pd(_mm256_sub_pd(a, t), b);
        }
        else
        {
            __m256d const num = _mm256_mul_pd(
                _mm256_mul_pd(_mm256_mul_pd(two, t), t), t);
            __m256d const den
                = _mm256_mul_pd(_mm256_mul_pd(root_two_pi, gap), gap);
            value = _mm256_div_pd(num, den);
        }
        // Lanes with !(t > threshold), NaN included, become +inf.
        __m256d const ok = _mm256_cmp_pd(t, threshold, _CMP_GT_OQ);
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(inf, value, ok));
    }
    bridge_curve_scalar(dim, script_t + i, out + i, n - i);
}

}  // namespace rsearch::kernels::detail
