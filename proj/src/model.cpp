#include "reset_search/model.hpp"

#include <cmath>
#include <string>

namespace rsearch {

std::string_view to_string(Mechanism m)
{
    switch (m)
    {
        case Mechanism::poisson:
            return "poisson";
        case Mechanism::periodic:
            return "periodic";
        case Mechanism::bridge:
            return "bridge";
    }
    return "unknown";
}

Mechanism parse_mechanism(std::string_view name)
{
    if (name == "poisson")
        return Mechanism::poisson;
    if (name == "periodic")
        return Mechanism::periodic;
    if (name == "bridge")
        return Mechanism::bridge;
    throw InvalidArgument("unknown mechanism '" + std::string(name) + "'");
}

SearchSpec::SearchSpec(int dimension, double diffusion, Mechanism mechanism,
                       double parameter, double detection_radius)
    : dimension_(dimension)
    , diffusion_(diffusion)
    , mechanism_(mechanism)
    , parameter_(parameter)
    , detection_radius_(detection_radius)
{
    if (dimension < 1 || dimension > 3)
        throw InvalidArgument("dimension must be 1, 2 or 3");
    if (!(diffusion > 0) || !std::isfinite(diffusion))
        throw InvalidArgument("diffusion coefficient must be positive");
    if (!(parameter > 0) || !std::isfinite(parameter))
        throw InvalidArgument(mechanism == Mechanism::poisson
                                  ? "reset rate must be positive"
                                  : "reset period must be positive");
    if (dimension >= 2
        && (!(detection_radius > 0) || !std::isfinite(detection_radius)))
        throw InvalidArgument("detection radius must be positive");
    if (dimension == 2 && mechanism != Mechanism::poisson)
        throw UnsupportedCombination(
            "two-dimensional search supports only Poissonian reset");
}

double SearchSpec::rate() const
{
    if (mechanism_ != Mechanism::poisson)
        throw InvalidArgument("rate requested for a periodic mechanism");
    return parameter_;
}

double SearchSpec::period() const
{
    if (mechanism_ == Mechanism::poisson)
        throw InvalidArgument("period requested for Poissonian reset");
    return parameter_;
}

double norm(Point const& p, int dimension)
{
    double sum = 0;
    for (int c = 0; c < dimension; ++c)
        sum += p[c] * p[c];
    return std::sqrt(sum);
}

TargetSpec TargetSpec::gaussian(double variance)
{
    if (!(variance > 0) || !std::isfinite(variance))
        throw InvalidArgument("target variance must be positive");
    return TargetSpec{Gaussian{variance}};
}

DimensionlessParams to_dimensionless(SearchSpec const& spec, double sigma2)
{
    if (!(sigma2 > 0) || !std::isfinite(sigma2))
        throw InvalidArgument("target variance must be positive");
    double const d = spec.diffusion();
    if (spec.mechanism() == Mechanism::poisson)
        return {Mechanism::poisson, spec.rate() * sigma2 / d};
    return {spec.mechanism(), spec.period() * d / sigma2};
}

double from_dimensionless(Mechanism mechanism, double value, double diffusion,
                          double sigma2)
{
    if (!(sigma2 > 0) || !(diffusion > 0))
        throw InvalidArgument("diffusion and variance must be positive");
    if (mechanism == Mechanism::poisson)
        return value * diffusion / sigma2;
    return value * sigma2 / diffusion;
}

ExpectedTime ExpectedTime::finite(double value)
{
    if (std::isnan(value) || value < 0)
        throw InvalidArgument("expected time must be a nonnegative number");
    ExpectedTime result;
    result.finite_ = true;
    result.value_ = value;
    return result;
}

double ExpectedTime::value() const
{
    if (!finite_)
        throw Error("expected time is divergent");
    return value_;
}

}  // namespace rsearch
