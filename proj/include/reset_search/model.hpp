#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace rsearch {

//---------------------------------------------------------------------------//
// Errors
//---------------------------------------------------------------------------//

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// A parameter violates a documented precondition.
class InvalidArgument : public Error
{
  public:
    using Error::Error;
};

/// The (dimension, mechanism) pair has no formula in this library.
class UnsupportedCombination : public Error
{
  public:
    using Error::Error;
};

/// Adaptive quadrature exhausted its evaluation budget.
class NonConvergence : public Error
{
  public:
    NonConvergence(std::string const& what, double value, double error)
        : Error(what), partial_value(value), partial_error(error)
    {
    }
    double partial_value;
    double partial_error;
};

//---------------------------------------------------------------------------//
// Search model
//---------------------------------------------------------------------------//

enum class Mechanism
{
    poisson,
    periodic,
    bridge
};

std::string_view to_string(Mechanism m);
Mechanism parse_mechanism(std::string_view name);

/// Searcher configuration: dimension, diffusion coefficient D, reset
/// mechanism with its parameter (rate r or period T), detection radius.
class SearchSpec
{
  public:
    SearchSpec(int dimension, double diffusion, Mechanism mechanism,
               double parameter, double detection_radius = 0.01);

    static SearchSpec poisson(int dimension, double diffusion, double rate,
                              double detection_radius = 0.01)
    {
        return {dimension, diffusion, Mechanism::poisson, rate,
                detection_radius};
    }
    static SearchSpec periodic(int dimension, double diffusion, double period,
                               double detection_radius = 0.01)
    {
        return {dimension, diffusion, Mechanism::periodic, period,
                detection_radius};
    }
    static SearchSpec bridge(int dimension, double diffusion, double period,
                             double detection_radius = 0.01)
    {
        return {dimension, diffusion, Mechanism::bridge, period,
                detection_radius};
    }

    int dimension() const { return dimension_; }
    double diffusion() const { return diffusion_; }
    Mechanism mechanism() const { return mechanism_; }
    double detection_radius() const { return detection_radius_; }

    //! Reset rate r; throws unless the mechanism is Poissonian.
    double rate() const;
    //! Reset period T; throws for the Poissonian mechanism.
    double period() const;
    //! Rate or period, whichever applies.
    double parameter() const { return parameter_; }

  private:
    int dimension_;
    double diffusion_;
    Mechanism mechanism_;
    double parameter_;
    double detection_radius_;
};

using Point = std::array<double, 3>;

/// Euclidean norm over the first `dimension` coordinates.
double norm(Point const& p, int dimension);

/// Target location: a fixed point or a centered Gaussian with variance σ².
class TargetSpec
{
  public:
    struct Fixed
    {
        Point point;
    };
    struct Gaussian
    {
        double variance;
    };

    static TargetSpec fixed(Point point) { return TargetSpec{Fixed{point}}; }
    //! Fixed target at distance `distance` along the first axis.
    static TargetSpec fixed_at(double distance)
    {
        return TargetSpec{Fixed{{distance, 0.0, 0.0}}};
    }
    static TargetSpec gaussian(double variance);

    bool is_fixed() const { return std::holds_alternative<Fixed>(value_); }
    bool is_gaussian() const
    {
        return std::holds_alternative<Gaussian>(value_);
    }
    Point const& point() const { return std::get<Fixed>(value_).point; }
    double variance() const { return std::get<Gaussian>(value_).variance; }

  private:
    explicit TargetSpec(std::variant<Fixed, Gaussian> v) : value_(v) {}
    std::variant<Fixed, Gaussian> value_;
};

/// Dimensionless rate s = r σ²/D or period 𝒯 = T D/σ².
struct DimensionlessParams
{
    Mechanism mechanism;
    double value;
};

DimensionlessParams to_dimensionless(SearchSpec const& spec, double sigma2);

//! Inverse of to_dimensionless: rate r = s D/σ² or period T = 𝒯 σ²/D.
double from_dimensionless(Mechanism mechanism, double value, double diffusion,
                          double sigma2);

//---------------------------------------------------------------------------//
// Results
//---------------------------------------------------------------------------//

/// Expected search time: a finite value or the divergent branch.
class ExpectedTime
{
  public:
    static ExpectedTime finite(double value);
    static ExpectedTime divergent() { return ExpectedTime{}; }

    bool is_finite() const { return finite_; }
    bool is_divergent() const { return !finite_; }

    //! Finite value; throws when divergent.
    double value() const;
    //! Finite value, or +inf when divergent (for minimization).
    double value_or_inf() const
    {
        return finite_ ? value_ : std::numeric_limits<double>::infinity();
    }

    ExpectedTime scaled(double factor) const
    {
        return finite_ ? finite(value_ * factor) : divergent();
    }

  private:
    ExpectedTime() = default;
    bool finite_ = false;
    double value_ = 0;
};

struct QuadResult
{
    double value = 0;
    double abs_error_estimate = 0;
    long evaluations = 0;
};

struct McEstimate
{
    double mean = 0;
    double std_error = 0;
    std::int64_t n = 0;
    double censored_fraction = 0;

    //! Censoring above 0.1% biases the mean downward.
    bool bias_warning() const { return censored_fraction > 1e-3; }
};

/// Too many replicates hit the reset-count cap.
class ExcessiveCensoring : public Error
{
  public:
    ExcessiveCensoring(std::string const& what, McEstimate est)
        : Error(what), estimate(est)
    {
    }
    McEstimate estimate;
};

}  // namespace rsearch
