#pragma once

#include <functional>

#include "reset_search/model.hpp"

namespace rsearch::quad {

struct QuadSettings
{
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    long max_evaluations = 1'000'000;

    //! Throws InvalidArgument on nonpositive tolerances or a budget < 100.
    void validate() const;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss–Kronrod (10/21) integration of f over [a, b].
///
/// The interval is first mapped through the cubic smoothstep
/// t = a + (b − a)·u²(3 − 2u), which turns t^{−1/2}-type endpoint
/// singularities at either end into smooth integrands. The integrand is never
/// evaluated at a or b.
///
/// Throws NonConvergence when the evaluation budget runs out before the error
/// estimate drops below max(abs_tol, rel_tol·|result|).
QuadResult integrate_finite(Integrand const& f, double a, double b,
                            QuadSettings const& settings = {});

/// Integral of a Gaussian-dominated f over [a, ∞).
///
/// The range is truncated at gaussian_truncation_point(abs_tol), extended in
/// unit steps (up to 45) while f is still non-negligible there, and the
/// finite part integrated with integrate_finite.
QuadResult integrate_semiinfinite(Integrand const& f, double a,
                                  QuadSettings const& settings = {});

/// Solution of x²/2 = −log(abs_tol) + 3 log x, capped at 45.
double gaussian_truncation_point(double abs_tol);

}  // namespace rsearch::quad
