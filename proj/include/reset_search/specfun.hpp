#pragma once

namespace rsearch::specfun {

/// Upper tail of the standard normal, ∫ₓ^∞ φ(u) du, computed through erfc so
/// that large positive x keeps full relative accuracy.
double gaussian_tail(double x);

/// Scaled complementary error function e^{x²} erfc(x).
double erfcx(double x);

/// 1/(√π·y·erfcx(y)) − 1 for y > 0, without cancellation for large y.
///
/// This is the relative gap between erfc(y) and its leading asymptotic term
/// e^{−y²}/(√π y); it decays like 1/(2y²).
double erfcx_inverse_excess(double y);

/// Modified Bessel function of the second kind, order zero. Requires x > 0.
double bessel_k0(double x);

/// e^{x} K₀(x), finite for all x > 0 (no underflow at large x).
double bessel_k0_scaled(double x);

/// K_{−1/2}(y) = √(π/(2y)) e^{−y}. Requires y > 0.
double bessel_k_minus_half(double y);

}  // namespace rsearch::specfun
