#include "reset_search/specfun.hpp"

#include <cmath>
#include <numbers>

#include "reset_search/model.hpp"

namespace rsearch::specfun {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Below this argument erfcx is evaluated as exp(x²)·erfc(x); above it the
// Laplace continued fraction converges in a few dozen terms.
constexpr double kErfcxSwitch = 5.0;

// Tail K of the Laplace continued fraction
//   √π·erfcx(x) = 1 / (x + K),  K = (1/2)/(x + 1/(x + (3/2)/(x + ...))).
double erfc_continued_fraction_tail(double x)
{
    double tail = 0;
    for (int n = 80; n >= 1; --n)
        tail = (0.5 * n) / (x + tail);
    return tail;
}

// Power series about zero; accurate to a few ulp for 0 < x ≤ 2.
double k0_series(double x)
{
    double const q = 0.25 * x * x;
    double term = 1;
    double harmonic = 0;
    double i0 = 1;
    double tail = 0;
    for (int k = 1; k < 60; ++k)
    {
        term *= q / (double(k) * k);
        harmonic += 1.0 / k;
        i0 += term;
        tail += term * harmonic;
        if (term * harmonic < 1e-18 * tail)
            break;
    }
    return -(std::log(0.5 * x) + std::numbers::egamma) * i0 + tail;
}

// Steed's continued fraction (Temme's form) for e^{x} K₀(x), x ≥ 2.
double k0_scaled_continued_fraction(double x)
{
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    double const a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 10000; ++i)
    {
        a -= 2 * (i - 1);
        c = -a * c / i;
        double const qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        double const dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < 1e-17)
            break;
    }
    return std::sqrt(std::numbers::pi / (2.0 * x)) / s;
}

void require_positive(double x, char const* name)
{
    if (!(x > 0))
        throw InvalidArgument(std::string(name) + " requires a positive argument");
}

}  // namespace

double gaussian_tail(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double erfcx(double x)
{
    if (x < kErfcxSwitch)
        return std::exp(x * x) * std::erfc(x);
    return 1.0 / (kSqrtPi * (x + erfc_continued_fraction_tail(x)));
}

double erfcx_inverse_excess(double y)
{
    require_positive(y, "erfcx_inverse_excess");
    if (y < kErfcxSwitch)
        return 1.0 / (kSqrtPi * y * erfcx(y)) - 1.0;
    return erfc_continued_fraction_tail(y) / y;
}

double bessel_k0(double x)
{
    require_positive(x, "bessel_k0");
    if (x <= 2.0)
        return k0_series(x);
    return std::exp(-x) * k0_scaled_continued_fraction(x);
}

double bessel_k0_scaled(double x)
{
    require_positive(x, "bessel_k0_scaled");
    if (x <= 2.0)
        return std::exp(x) * k0_series(x);
    return k0_scaled_continued_fraction(x);
}

double bessel_k_minus_half(double y)
{
    require_positive(y, "bessel_k_minus_half");
    return std::sqrt(std::numbers::pi / (2.0 * y)) * std::exp(-y);
}

}  // namespace rsearch::specfun
