#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "reset_search/analytic.hpp"
#include "reset_search/kernels.hpp"
#include "reset_search/mc.hpp"
#include "reset_search/optimize.hpp"

namespace rsearch::cli {
namespace {

using nlohmann::ordered_json;

class UsageError : public Error
{
  public:
    using Error::Error;
};

class IoError : public Error
{
  public:
    using Error::Error;
};

//---------------------------------------------------------------------------//
// Shared flags
//---------------------------------------------------------------------------//

struct Selection
{
    int dim = 0;
    std::string mechanism;
    std::optional<double> rate;
    std::optional<double> period;
    double diffusion = 1.0;
    std::optional<double> sigma2;
    std::string target_a;
    double eps0 = 0.01;
    bool pretty = false;
    bool timing = false;

    CLI::Option* diffusion_opt = nullptr;
    CLI::Option* eps0_opt = nullptr;
};

void add_selection(CLI::App* app, Selection& sel, bool with_parameter,
                   bool with_target)
{
    app->add_option("--dim", sel.dim, "Spatial dimension")
        ->required()
        ->check(CLI::Range(1, 3));
    app->add_option("--mechanism", sel.mechanism, "Reset mechanism")
        ->required()
        ->check(CLI::IsMember({"poisson", "periodic", "bridge"}));
    if (with_parameter)
    {
        app->add_option("--rate", sel.rate, "Poissonian reset rate r");
        app->add_option("--period", sel.period, "Reset or bridge period T");
    }
    sel.diffusion_opt = app->add_option("--diffusion", sel.diffusion,
                                        "Diffusion coefficient D (default 1)");
    app->add_option("--sigma2", sel.sigma2,
                    "Variance of the centered Gaussian target (default 1)");
    if (with_target)
        app->add_option("--target-a", sel.target_a,
                        "Fixed target: distance, or comma-separated point");
    sel.eps0_opt = app->add_option("--eps0", sel.eps0,
                                   "Detection radius in d >= 2 (default 0.01)");
    app->add_flag("--pretty", sel.pretty, "Aligned text instead of JSON");
    app->add_flag("--timing", sel.timing, "Include wall time in the report");
}

Mechanism mechanism_of(Selection const& sel)
{
    return parse_mechanism(sel.mechanism);
}

SearchSpec make_spec(Selection const& sel)
{
    Mechanism const mech = mechanism_of(sel);
    if (mech == Mechanism::poisson)
    {
        if (sel.period)
            throw UsageError("--period does not apply to poisson reset");
        if (!sel.rate)
            throw UsageError("poisson reset needs --rate");
        return {sel.dim, sel.diffusion, mech, *sel.rate, sel.eps0};
    }
    if (sel.rate)
        throw UsageError("--rate applies only to poisson reset");
    if (!sel.period)
        throw UsageError(std::string(to_string(mech)) + " reset needs --period");
    return {sel.dim, sel.diffusion, mech, *sel.period, sel.eps0};
}

std::optional<Point> parse_target(std::string const& text, int dim)
{
    if (text.empty())
        return std::nullopt;
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        }
        catch (std::exception const&)
        {
            throw UsageError("malformed --target-a '" + text + "'");
        }
    }
    Point p{0, 0, 0};
    if (values.size() == 1)
    {
        p[0] = values[0];
    }
    else if (static_cast<int>(values.size()) == dim)
    {
        std::copy(values.begin(), values.end(), p.begin());
    }
    else
    {
        throw UsageError("--target-a needs 1 or " + std::to_string(dim)
                         + " components");
    }
    return p;
}

TargetSpec make_target(Selection const& sel, std::optional<Point> const& a)
{
    if (a && sel.sigma2)
        throw UsageError("--target-a and --sigma2 are mutually exclusive");
    return a ? TargetSpec::fixed(*a) : TargetSpec::gaussian(sel.sigma2.value_or(1.0));
}

ordered_json parameters_json(Selection const& sel, SearchSpec const* spec,
                             std::optional<Point> const& target)
{
    ordered_json p;
    p["dim"] = sel.dim;
    p["mechanism"] = sel.mechanism;
    if (spec)
    {
        if (spec->mechanism() == Mechanism::poisson)
            p["rate"] = spec->rate();
        else
            p["period"] = spec->period();
    }
    p["diffusion"] = sel.diffusion;
    if (target)
    {
        std::vector<double> coords(target->begin(), target->begin() + sel.dim);
        p["target_a"] = coords;
    }
    else
    {
        p["sigma2"] = sel.sigma2.value_or(1.0);
    }
    if (sel.dim >= 2)
        p["eps0"] = sel.eps0;

    std::vector<std::string> defaults;
    if (sel.diffusion_opt && sel.diffusion_opt->count() == 0)
        defaults.push_back("diffusion");
    if (!target && !sel.sigma2)
        defaults.push_back("sigma2");
    if (sel.dim >= 2 && sel.eps0_opt && sel.eps0_opt->count() == 0)
        defaults.push_back("eps0");
    p["defaults_applied"] = defaults;
    return p;
}

void put_time(ordered_json& j, ExpectedTime const& t)
{
    if (t.is_finite())
    {
        j["status"] = "finite";
        j["value"] = t.value();
    }
    else
    {
        j["status"] = "divergent";
        j["value"] = nullptr;
    }
}

ordered_json report(std::string const& command)
{
    ordered_json j;
    j["schema"] = 1;
    j["command"] = command;
    return j;
}

//---------------------------------------------------------------------------//
// Output
//---------------------------------------------------------------------------//

void flatten(ordered_json const& j, std::string const& prefix,
             std::vector<std::pair<std::string, std::string>>& rows)
{
    if (j.is_object())
    {
        for (auto const& [key, value] : j.items())
            flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
        return;
    }
    if (j.is_array() && !j.empty() && j.front().is_structured())
    {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
        return;
    }
    if (j.is_string())
        rows.emplace_back(prefix, j.get<std::string>());
    else
        rows.emplace_back(prefix, j.dump());
}

void emit(ordered_json const& j, bool pretty, std::ostream& out)
{
    if (!pretty)
    {
        out << j.dump() << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    std::size_t width = 0;
    for (auto const& r : rows)
        width = std::max(width, r.first.size());
    for (auto const& r : rows)
        out << std::left << std::setw(static_cast<int>(width) + 2) << r.first
            << r.second << '\n';
}

std::string fmt(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class Stopwatch
{
  public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now()
                                             - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_
        = std::chrono::steady_clock::now();
};

void maybe_time(ordered_json& j, Selection const& sel, Stopwatch const& sw)
{
    if (sel.timing)
        j["wall_time_s"] = sw.seconds();
}

//---------------------------------------------------------------------------//
// eval
//---------------------------------------------------------------------------//

ordered_json fixed_result(SearchSpec const& spec, Point const& a)
{
    int const dim = spec.dimension();
    double const D = spec.diffusion();
    double const eps0 = spec.detection_radius();
    double const dist = norm(a, dim);
    ordered_json r;
    r["units"] = analytic::to_string(analytic::Units::time);
    r["provenance"] = analytic::to_string(analytic::Provenance::closed_form);
    r["eps0_scaling"] = analytic::to_string(analytic::Eps0Scaling::none);

    if (dim >= 2 && dist <= eps0)
    {
        put_time(r, ExpectedTime::finite(0));
        return r;
    }
    switch (spec.mechanism())
    {
        case Mechanism::poisson:
            if (dim == 1)
                put_time(r, analytic::poisson_fixed_1d(spec.rate(), D, a[0]));
            else if (dim == 2)
                put_time(r, analytic::poisson_fixed_2d(spec.rate(), D, dist, eps0));
            else
                put_time(r, analytic::poisson_fixed_3d(spec.rate(), D, dist, eps0));
            break;
        case Mechanism::periodic:
            if (dim == 1)
                put_time(r, a[0] == 0 ? ExpectedTime::finite(0)
                                      : analytic::periodic_fixed_1d(
                                          spec.period(), D, a[0]));
            else
                put_time(r, analytic::periodic_fixed_3d(spec.period(), D,
                                                        dist, eps0));
            break;
        case Mechanism::bridge:
            if (dim == 1)
            {
                put_time(r, analytic::bridge_fixed_1d(spec.period(), D, a[0]));
            }
            else
            {
                auto const b = analytic::bridge_fixed_3d_bounds(
                    spec.period(), D, dist, eps0);
                r["status"] = "bounds";
                r["lower"] = b.lower.value();
                r["upper"] = b.upper.value();
            }
            break;
    }
    return r;
}

ordered_json gauss_result(SearchSpec const& spec, double sigma2,
                          quad::QuadSettings const& q)
{
    auto const g = analytic::gauss_expected_time({spec, sigma2}, q);
    ordered_json r;
    put_time(r, g.time);
    r["units"] = analytic::to_string(analytic::Units::time);
    r["provenance"] = analytic::to_string(g.provenance);
    r["eps0_scaling"] = analytic::to_string(g.scaling);
    r["dimensionless_parameter"] = g.dimensionless_parameter;
    r["dimensionless_value"] = g.coefficient.is_finite()
                                   ? ordered_json(g.coefficient.value())
                                   : ordered_json(nullptr);
    r["dimensionless_units"] = analytic::to_string(g.units);
    if (g.provenance == analytic::Provenance::quadrature)
        r["rel_tol"] = q.rel_tol;
    return r;
}

int cmd_eval(Selection const& sel, double tol, std::ostream& out)
{
    Stopwatch sw;
    SearchSpec const spec = make_spec(sel);
    auto const target_pt = parse_target(sel.target_a, sel.dim);
    TargetSpec const target = make_target(sel, target_pt);
    quad::QuadSettings q = analytic::kObjectiveQuad;
    q.rel_tol = tol;
    q.validate();

    ordered_json j = report("eval");
    j["parameters"] = parameters_json(sel, &spec, target_pt);
    j["result"] = target.is_fixed() ? fixed_result(spec, target.point())
                                    : gauss_result(spec, target.variance(), q);
    maybe_time(j, sel, sw);
    emit(j, sel.pretty, out);
    return kOk;
}

//---------------------------------------------------------------------------//
// optimize
//---------------------------------------------------------------------------//

std::vector<double> split_numbers(std::string const& text, char sep,
                                  char const* flag)
{
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
    {
        try
        {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        }
        catch (std::exception const&)
        {
            throw UsageError(std::string("malformed ") + flag + " '" + text + "'");
        }
    }
    return values;
}

int cmd_optimize(Selection const& sel, std::string const& bracket_text,
                 double x_tol, std::ostream& out)
{
    Stopwatch sw;
    Mechanism const mech = mechanism_of(sel);
    // Validates the (dim, mechanism) pair and the physical parameters.
    SearchSpec const probe(sel.dim, sel.diffusion, mech, 1.0, sel.eps0);
    double const sigma2 = sel.sigma2.value_or(1.0);
    if (!(sigma2 > 0))
        throw InvalidArgument("target variance must be positive");

    optimize::Bracket bracket = optimize::default_bracket(mech);
    if (!bracket_text.empty())
    {
        auto const v = split_numbers(bracket_text, ':', "--bracket");
        if (v.size() != 2)
            throw UsageError("--bracket expects lo:hi");
        bracket = {v[0], v[1]};
    }
    auto const objective = optimize::gauss_objective(sel.dim, mech);
    auto const opt = optimize::minimize_scalar(objective, bracket, x_tol);
    auto const shape = optimize::check_unimodal(objective, bracket);

    double const unit = (sel.dim == 3 ? sigma2 * std::sqrt(sigma2) : sigma2)
                        / sel.diffusion;
    ordered_json j = report("optimize");
    j["parameters"] = parameters_json(sel, nullptr, std::nullopt);
    j["parameters"]["bracket"] = {bracket.lo, bracket.hi};
    j["parameters"]["x_tol"] = x_tol;

    ordered_json r;
    r["argmin_dimensionless"] = opt.argmin;
    r["min_dimensionless"] = opt.min_value;
    r[mech == Mechanism::poisson ? "argmin_rate" : "argmin_period"]
        = from_dimensionless(mech, opt.argmin, sel.diffusion, sigma2);
    r["min"] = opt.min_value * unit;
    r["units"] = analytic::to_string(analytic::Units::time);
    r["dimensionless_units"] = analytic::to_string(analytic::gauss_units(sel.dim));
    r["provenance"] = analytic::to_string(analytic::gauss_provenance(sel.dim, mech));
    r["eps0_scaling"] = analytic::to_string(analytic::gauss_scaling(sel.dim));
    r["x_tolerance"] = opt.x_tolerance;
    r["function_evaluations"] = opt.function_evaluations;
    r["unimodal"] = shape.unimodal;
    r["slope_sign_changes"] = shape.slope_sign_changes;
    j["result"] = r;
    maybe_time(j, sel, sw);
    emit(j, sel.pretty, out);
    return kOk;
}

//---------------------------------------------------------------------------//
// table
//---------------------------------------------------------------------------//

char const* const kTableHeader
    = "theorem,mechanism,dim,argmin,min,paper_argmin,paper_min,"
      "rel_dev_argmin,rel_dev_min";

void write_text(std::string const& path, std::string const& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f)
        throw IoError("failed writing '" + path + "'");
}

int cmd_table(std::string const& out_path, bool pretty, bool timing,
              std::ostream& out)
{
    Stopwatch sw;
    auto const rows = optimize::optimal_constants();
    std::ostringstream csv;
    csv << kTableHeader << '\n';
    ordered_json j = report("table");
    ordered_json jrows = ordered_json::array();
    double worst = 0;
    for (auto const& row : rows)
    {
        double const dev_arg = std::fabs(row.optimum.argmin - row.reference_argmin)
                               / row.reference_argmin;
        double const dev_min = std::fabs(row.optimum.min_value - row.reference_min)
                               / row.reference_min;
        worst = std::max({worst, dev_arg, dev_min});
        csv << row.id << ',' << to_string(row.mechanism) << ','
            << row.dimension << ',' << fmt(row.optimum.argmin) << ','
            << fmt(row.optimum.min_value) << ',' << fmt(row.reference_argmin) << ','
            << fmt(row.reference_min) << ',' << fmt(dev_arg) << ',' << fmt(dev_min)
            << '\n';
        ordered_json r;
        r["id"] = row.id;
        r["mechanism"] = to_string(row.mechanism);
        r["dim"] = row.dimension;
        r["argmin"] = row.optimum.argmin;
        r["min"] = row.optimum.min_value;
        r["reference_argmin"] = row.reference_argmin;
        r["reference_min"] = row.reference_min;
        r["rel_dev_argmin"] = dev_arg;
        r["rel_dev_min"] = dev_min;
        r["units"] = analytic::to_string(analytic::gauss_units(row.dimension));
        jrows.push_back(r);
    }
    if (out_path.empty())
    {
        out << csv.str();
        return kOk;
    }
    write_text(out_path, csv.str());
    j["out"] = out_path;
    j["rows"] = jrows;
    j["max_rel_dev"] = worst;
    if (timing)
        j["wall_time_s"] = sw.seconds();
    emit(j, pretty, out);
    return kOk;
}

int cmd_curve(Selection const& sel, std::string const& grid_text,
              std::string const& out_path, std::ostream& out)
{
    Mechanism const mech = mechanism_of(sel);
    SearchSpec const probe(sel.dim, sel.diffusion, mech, 1.0, sel.eps0);
    auto const g = split_numbers(grid_text, ':', "--grid");
    if (g.size() != 3 || !(g[2] >= 1) || g[2] != std::floor(g[2]))
        throw UsageError("--grid expects lo:hi:n with integer n >= 1");
    if (!(g[0] > 0) || !(g[1] >= g[0]))
        throw UsageError("--grid needs 0 < lo <= hi");
    auto const n = static_cast<std::size_t>(g[2]);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = n == 1 ? g[0] : g[0] + (g[1] - g[0]) * i / (n - 1);

    std::vector<double> ys(n);
    if (mech == Mechanism::bridge)
    {
        kernels::bridge_curve(sel.dim, xs.data(), ys.data(), n);
    }
    else
    {
        for (std::size_t i = 0; i < n; ++i)
            ys[i] = analytic::gauss_dimensionless(sel.dim, mech, xs[i])
                        .value_or_inf();
    }
    std::ostringstream csv;
    csv << (mech == Mechanism::poisson ? "s" : "T") << ",value\n";
    for (std::size_t i = 0; i < n; ++i)
        csv << fmt(xs[i]) << ',' << fmt(ys[i]) << '\n';
    if (out_path.empty())
        out << csv.str();
    else
        write_text(out_path, csv.str());
    return kOk;
}

//---------------------------------------------------------------------------//
// simulate
//---------------------------------------------------------------------------//

struct SimFlags
{
    std::int64_t n = 10'000;
    double dt = 0;
    std::uint64_t seed = 1;
    std::int64_t max_resets = 100'000;
    int threads = 0;
    bool plain_euler = false;
};

ordered_json estimate_json(McEstimate const& e)
{
    ordered_json r;
    r["mean"] = e.mean;
    r["std_error"] = e.std_error;
    r["n"] = e.n;
    r["censored_fraction"] = e.censored_fraction;
    r["bias_warning"] = e.bias_warning();
    return r;
}

// Analytic counterpart of a simulation, when one exists.
std::optional<ordered_json> analytic_counterpart(SearchSpec const& spec,
                                                 TargetSpec const& target,
                                                 McEstimate const& e)
{
    int const dim = spec.dimension();
    double const D = spec.diffusion();
    double const eps0 = spec.detection_radius();
    ordered_json a;
    auto with_value = [&](ExpectedTime t) -> std::optional<ordered_json> {
        put_time(a, t);
        if (t.is_finite() && e.std_error > 0)
            a["z_score"] = (e.mean - t.value()) / e.std_error;
        return a;
    };

    if (target.is_gaussian())
    {
        if (dim != 1)
            return std::nullopt;
        double const s2 = target.variance();
        switch (spec.mechanism())
        {
            case Mechanism::poisson:
                return with_value(
                    analytic::gauss_poisson_1d_dimensional(spec.rate(), D, s2));
            case Mechanism::bridge:
                return with_value(
                    analytic::gauss_bridge_1d_dimensional(spec.period(), D, s2));
            case Mechanism::periodic:
                return with_value(analytic::gauss_periodic_1d_dimensional(
                    spec.period(), D, s2));
        }
        return std::nullopt;
    }

    Point const& p = target.point();
    double const dist = norm(p, dim);
    if (dim == 1)
    {
        if (p[0] == 0)
            return with_value(ExpectedTime::finite(0));
        switch (spec.mechanism())
        {
            case Mechanism::poisson:
                return with_value(analytic::poisson_fixed_1d(spec.rate(), D, p[0]));
            case Mechanism::periodic:
                return with_value(
                    analytic::periodic_fixed_1d(spec.period(), D, p[0]));
            case Mechanism::bridge:
                return with_value(
                    analytic::bridge_fixed_1d(spec.period(), D, p[0]));
        }
    }
    if (dist <= eps0)
        return with_value(ExpectedTime::finite(0));
    switch (spec.mechanism())
    {
        case Mechanism::poisson:
        {
            // The Bessel-ratio closed form is written for per-coordinate
            // variance 2Dt; the simulated walker has variance Dt.
            a["note"] = "closed form evaluated at D/2 to match the simulated "
                        "per-coordinate variance D*t";
            double const d_eff = D / 2;
            return with_value(dim == 2 ? analytic::poisson_fixed_2d(
                                             spec.rate(), d_eff, dist, eps0)
                                       : analytic::poisson_fixed_3d(
                                             spec.rate(), d_eff, dist, eps0));
        }
        case Mechanism::periodic:
            return with_value(
                analytic::periodic_fixed_3d(spec.period(), D, dist, eps0));
        case Mechanism::bridge:
        {
            auto const b
                = analytic::bridge_fixed_3d_bounds(spec.period(), D, dist, eps0);
            a["status"] = "bounds";
            a["lower"] = b.lower.value();
            a["upper"] = b.upper.value();
            a["inside_bounds"]
                = e.mean >= b.lower.value() - 3 * e.std_error
                  && e.mean <= b.upper.value() + 3 * e.std_error;
            return a;
        }
    }
    return std::nullopt;
}

int cmd_simulate(Selection const& sel, SimFlags const& flags,
                 std::ostream& out, std::ostream& err)
{
    Stopwatch sw;
    SearchSpec const spec = make_spec(sel);
    auto const target_pt = parse_target(sel.target_a, sel.dim);
    TargetSpec const target = make_target(sel, target_pt);

    mc::SimSettings settings;
    settings.dt = flags.dt;
    settings.n_replicates = flags.n;
    settings.seed = flags.seed;
    settings.max_resets = flags.max_resets;
    settings.threads = flags.threads;
    settings.adaptive_far_field = !flags.plain_euler;
    settings.validate(spec);

    ordered_json j = report("simulate");
    ordered_json params = parameters_json(sel, &spec, target_pt);
    params["n"] = flags.n;
    params["dt"] = settings.dt > 0 ? settings.dt : mc::default_dt(spec, target);
    params["seed"] = flags.seed;
    params["max_resets"] = flags.max_resets;
    params["adaptive_far_field"] = settings.adaptive_far_field;
    params["threads"] = mc::resolve_threads(flags.threads);
    j["parameters"] = params;

    int code = kOk;
    McEstimate est;
    try
    {
        est = mc::estimate_mean(spec, target, settings);
    }
    catch (ExcessiveCensoring const& e)
    {
        err << "error: " << e.what() << '\n';
        est = e.estimate;
        code = kExcessiveCensoring;
    }
    ordered_json r = estimate_json(est);
    r["units"] = analytic::to_string(analytic::Units::time);
    r["provenance"] = analytic::to_string(analytic::Provenance::monte_carlo);
    r["eps0_scaling"] = analytic::to_string(analytic::Eps0Scaling::none);
    j["result"] = r;
    if (code == kOk)
    {
        if (auto a = analytic_counterpart(spec, target, est))
            j["analytic"] = *a;
    }
    maybe_time(j, sel, sw);
    emit(j, sel.pretty, out);
    return code;
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out,
        std::ostream& err)
{
    CLI::App app{"Expected search times under stochastic resetting",
                 "reset-search"};
    app.require_subcommand(1);

    Selection eval_sel;
    double tol = 1e-10;
    auto* eval = app.add_subcommand("eval", "Evaluate an expected search time");
    add_selection(eval, eval_sel, true, true);
    eval->add_option("--tol", tol, "Relative quadrature tolerance")
        ->check(CLI::PositiveNumber);

    Selection opt_sel;
    std::string bracket;
    double x_tol = 1e-6;
    auto* opt = app.add_subcommand(
        "optimize", "Minimize the Gaussian-target expectation over r or T");
    add_selection(opt, opt_sel, false, false);
    opt->add_option("--bracket", bracket, "Dimensionless search bracket lo:hi");
    opt->add_option("--xtol", x_tol, "Argmin tolerance (dimensionless)")
        ->check(CLI::PositiveNumber);

    std::string table_out;
    bool curve = false;
    std::string grid;
    std::string table_mech;
    int table_dim = 0;
    bool table_pretty = false;
    bool table_timing = false;
    auto* table = app.add_subcommand(
        "table", "Optimal constants as CSV, or an objective curve with --curve");
    table->add_option("--out", table_out, "CSV output path");
    table->add_flag("--curve", curve, "Emit (parameter, value) rows");
    table->add_option("--grid", grid, "Curve grid lo:hi:n");
    table->add_option("--mechanism", table_mech, "Curve mechanism")
        ->check(CLI::IsMember({"poisson", "periodic", "bridge"}));
    table->add_option("--dim", table_dim, "Curve dimension")
        ->check(CLI::Range(1, 3));
    table->add_flag("--pretty", table_pretty, "Aligned text instead of JSON");
    table->add_flag("--timing", table_timing, "Include wall time");

    Selection sim_sel;
    SimFlags sim_flags;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate");
    add_selection(sim, sim_sel, true, true);
    sim->add_option("--n", sim_flags.n, "Replicates")->check(CLI::PositiveNumber);
    sim->add_option("--dt", sim_flags.dt, "Base time step (default automatic)");
    sim->add_option("--seed", sim_flags.seed, "RNG seed");
    sim->add_option("--max-resets", sim_flags.max_resets,
                    "Reset cap per replicate");
    sim->add_option("--threads", sim_flags.threads,
                    "Worker threads (0 = automatic)");
    sim->add_flag("--plain-euler", sim_flags.plain_euler,
                  "Disable far-field step growth in d >= 2");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (CLI::CallForHelp const&)
    {
        out << app.help();
        return kOk;
    }
    catch (CLI::CallForAllHelp const&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    }
    catch (CLI::ParseError const& e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try
    {
        if (eval->parsed())
            return cmd_eval(eval_sel, tol, out);
        if (opt->parsed())
            return cmd_optimize(opt_sel, bracket, x_tol, out);
        if (table->parsed())
        {
            if (!curve)
                return cmd_table(table_out, table_pretty, table_timing, out);
            if (table_mech.empty() || table_dim == 0 || grid.empty())
                throw UsageError("--curve needs --mechanism, --dim and --grid");
            Selection s;
            s.dim = table_dim;
            s.mechanism = table_mech;
            return cmd_curve(s, grid, table_out, out);
        }
        if (sim->parsed())
            return cmd_simulate(sim_sel, sim_flags, out, err);
    }
    catch (UsageError const& e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    catch (optimize::BracketTooNarrow const& e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    catch (InvalidArgument const& e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    catch (UnsupportedCombination const& e)
    {
        err << "error: unsupported combination: " << e.what() << '\n';
        return kUnsupported;
    }
    catch (NonConvergence const& e)
    {
        err << "error: " << e.what() << " (partial value " << e.partial_value
            << ", error estimate " << e.partial_error << ")\n";
        return kNonConvergence;
    }
    catch (optimize::NoFiniteValue const& e)
    {
        err << "error: " << e.what() << '\n';
        return kNonConvergence;
    }
    catch (IoError const& e)
    {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    catch (ExcessiveCensoring const& e)
    {
        err << "error: " << e.what() << '\n';
        return kExcessiveCensoring;
    }
    return kUsage;
}

}  // namespace rsearch::cli
