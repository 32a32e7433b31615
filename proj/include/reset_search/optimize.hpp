#pragma once

#include <functional>
#include <string>
#include <vector>

#include "reset_search/model.hpp"

namespace rsearch::optimize {

/// Every probe of the objective was Divergent.
class NoFiniteValue : public Error
{
  public:
    using Error::Error;
};

/// The bracket is empty or inverted.
class BracketTooNarrow : public Error
{
  public:
    using Error::Error;
};

struct Optimum
{
    double argmin = 0;
    double min_value = 0;
    double x_tolerance = 0;
    int function_evaluations = 0;
};

using Objective = std::function<ExpectedTime(double)>;

struct Bracket
{
    double lo;
    double hi;
};

/// Minimize f over (lo, hi).
///
/// The bracket is probed at 64 log-spaced points (Divergent counts as +inf),
/// and golden-section search refines between the neighbours of the best
/// probe until the interval is shorter than x_tol.
Optimum minimize_scalar(Objective const& f, Bracket bracket,
                        double x_tol = 1e-6);

struct UnimodalityReport
{
    bool unimodal = false;
    int slope_sign_changes = 0;
};

/// Count sign changes of the discrete slope of f over a log-spaced grid.
UnimodalityReport check_unimodal(Objective const& f, Bracket bracket,
                                 int points = 200);

struct OptimalConstant
{
    std::string id;
    int dimension;
    Mechanism mechanism;
    Bracket bracket;
    double reference_argmin;
    double reference_min;
    Optimum optimum;
};

/// Search bracket used for the Gaussian-target objective of (dim, mech).
Bracket default_bracket(Mechanism mechanism);

/// Objective for the dimensionless Gaussian-target expectation.
Objective gauss_objective(int dimension, Mechanism mechanism);

/// Optimal dimensionless parameter and value for the seven supported
/// Gaussian-target cases, with three-to-four digit reference values.
std::vector<OptimalConstant> optimal_constants();

}  // namespace rsearch::optimize
