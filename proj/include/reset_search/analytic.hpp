#pragma once

#include <string_view>

#include "reset_search/model.hpp"
#include "reset_search/quad.hpp"

namespace rsearch::analytic {

/// Periods within this distance of a divergence threshold are Divergent.
inline constexpr double kDivergenceGuard = 1e-9;

/// Tolerances used when a Gaussian-target value is an optimizer objective.
inline constexpr quad::QuadSettings kObjectiveQuad{1e-12, 1e-14, 1'000'000};

//---------------------------------------------------------------------------//
// Fixed target
//---------------------------------------------------------------------------//

ExpectedTime poisson_fixed_1d(double rate, double diffusion, double a);

//! Requires distance > eps0 > 0.
ExpectedTime poisson_fixed_2d(double rate, double diffusion, double distance,
                              double eps0);
ExpectedTime poisson_fixed_3d(double rate, double diffusion, double distance,
                              double eps0);

/// Bessel-ratio formula for Poissonian reset in dimension 2 or 3,
/// (1/r)[(ε₀/|a|)^{1−d/2} K_ν(√(r/D) ε₀)/K_ν(√(r/D)|a|) − 1] with ν = 1 − d/2.
ExpectedTime poisson_fixed_bessel(int dimension, double rate, double diffusion,
                                  double distance, double eps0);

ExpectedTime bridge_fixed_1d(double period, double diffusion, double a);

/// Probability that one bridge of length T reaches level a.
double bridge_crossing_prob(double period, double diffusion, double a);

/// First-passage density of free 1D Brownian motion to level a.
double fpt_density_1d(double t, double a, double diffusion);

/// Sub-density of the first passage to a within a bridge of length T.
double bridge_fpt_subdensity_1d(double t, double a, double diffusion,
                                double period);

/// First-passage sub-density of 3D Brownian motion from the origin to the
/// ε₀-ball around a point at the given distance.
double fpt_subdensity_3d(double t, double distance, double eps0,
                         double diffusion);

struct TimeBounds
{
    ExpectedTime lower;
    ExpectedTime upper;
};

/// Lower and upper bounds on the 3D bridge-reset search time (no exact value
/// is known for a fixed target).
TimeBounds bridge_fixed_3d_bounds(double period, double diffusion,
                                  double distance, double eps0);

ExpectedTime periodic_fixed_1d(double period, double diffusion, double a);
ExpectedTime periodic_fixed_3d(double period, double diffusion,
                               double distance, double eps0);

/// ∫₀^T t^{−3/2} e^{−c/t} dt = √(π/c)·erfc(√(c/T)), c > 0.
double inverse_time_integral_32(double c, double period);

/// ∫₀^T t^{−1/2} e^{−c/t} dt = 2√T e^{−c/T} − 2c·(the t^{−3/2} integral).
double inverse_time_integral_12(double c, double period);

/// Ratio of the two integrals above (the mean first-passage time within one
/// period given a hit), evaluated without cancellation. Zero at c = 0.
double periodic_conditional_hit_time(double c, double period);

//---------------------------------------------------------------------------//
// Centered Gaussian target, dimensionless forms
//---------------------------------------------------------------------------//
// Poissonian inputs are s = r σ²/D, periodic and bridge inputs 𝒯 = T D/σ².
// Results are in units σ²/D (d = 1, 2) or σ³/D (d = 3). In d = 3 the value is
// lim ε₀·E and in d = 2 it is lim E/|log ε₀|.

double gauss_poisson_1d(double s);
ExpectedTime gauss_bridge_1d(double script_t);
ExpectedTime gauss_periodic_1d(double script_t,
                               quad::QuadSettings const& q = kObjectiveQuad);
double gauss_poisson_3d(double s, quad::QuadSettings const& q = kObjectiveQuad);
ExpectedTime gauss_bridge_3d(double script_t);
ExpectedTime gauss_periodic_3d(double script_t,
                               quad::QuadSettings const& q = kObjectiveQuad);
double gauss_poisson_2d(double s, quad::QuadSettings const& q = kObjectiveQuad);

/// Dispatch on (dimension, mechanism). Throws UnsupportedCombination for the
/// two-dimensional periodic and bridge cases.
ExpectedTime gauss_dimensionless(int dimension, Mechanism mechanism,
                                 double value,
                                 quad::QuadSettings const& q = kObjectiveQuad);

//---------------------------------------------------------------------------//
// Centered Gaussian target, dimensional forms
//---------------------------------------------------------------------------//
// Same quantities written directly in (r or T, D, σ²); used to cross-check the
// dimensionless route.

ExpectedTime gauss_poisson_1d_dimensional(double rate, double diffusion,
                                          double sigma2);
ExpectedTime gauss_bridge_1d_dimensional(double period, double diffusion,
                                         double sigma2);
ExpectedTime gauss_periodic_1d_dimensional(
    double period, double diffusion, double sigma2,
    quad::QuadSettings const& q = kObjectiveQuad);
ExpectedTime gauss_poisson_3d_dimensional(
    double rate, double diffusion, double sigma2,
    quad::QuadSettings const& q = kObjectiveQuad);
ExpectedTime gauss_bridge_3d_dimensional(double period, double diffusion,
                                         double sigma2);
ExpectedTime gauss_periodic_3d_dimensional(
    double period, double diffusion, double sigma2,
    quad::QuadSettings const& q = kObjectiveQuad);
ExpectedTime gauss_poisson_2d_dimensional(
    double rate, double diffusion, double sigma2,
    quad::QuadSettings const& q = kObjectiveQuad);

//---------------------------------------------------------------------------//
// Query dispatch
//---------------------------------------------------------------------------//

enum class Units
{
    time,
    sigma2_over_diffusion,
    sigma3_over_diffusion
};

enum class Provenance
{
    closed_form,
    quadrature,
    monte_carlo
};

/// How the ε₀ dependence is removed from a Gaussian-target result.
enum class Eps0Scaling
{
    none,
    eps0_times_expectation,
    expectation_over_abs_log_eps0
};

std::string_view to_string(Units u);
std::string_view to_string(Provenance p);
std::string_view to_string(Eps0Scaling s);

struct GaussQuery
{
    SearchSpec spec;
    double sigma2;
};

struct GaussResult
{
    ExpectedTime time;         //!< coefficient × (σ²/D or σ³/D)
    ExpectedTime coefficient;  //!< dimensionless value
    double dimensionless_parameter;
    Units units;
    Provenance provenance;
    Eps0Scaling scaling;
};

GaussResult gauss_expected_time(GaussQuery const& query,
                                quad::QuadSettings const& q = kObjectiveQuad);

Units gauss_units(int dimension);
Eps0Scaling gauss_scaling(int dimension);
Provenance gauss_provenance(int dimension, Mechanism mechanism);

}  // namespace rsearch::analytic
