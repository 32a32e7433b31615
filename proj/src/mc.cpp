#include "reset_search/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "reset_search/kernels.hpp"

namespace rsearch::mc {
namespace {

constexpr std::size_t kLanes = 8;
constexpr std::uint64_t kPathTag = 0x7061746873ull;

// Crossing probabilities below e^{-40} are treated as zero without a draw.
constexpr double kNegligibleExponent = 40.0;

struct Problem
{
    int dim;
    double diffusion;
    Mechanism mechanism;
    double parameter;
    double eps0;
    TargetSpec target;
    double dt;
    bool adaptive;
    std::int64_t max_resets;
    std::uint64_t seed;
};

Problem make_problem(SearchSpec const& spec, TargetSpec const& target,
                     SimSettings const& settings)
{
    settings.validate(spec);
    if (target.is_fixed())
    {
        for (double c : target.point())
            if (!std::isfinite(c))
                throw InvalidArgument("target coordinates must be finite");
    }
    double const dt = settings.dt > 0 ? settings.dt : default_dt(spec, target);
    return {spec.dimension(),   spec.diffusion(),
            spec.mechanism(),   spec.parameter(),
            spec.detection_radius(), target,
            dt,                 settings.adaptive_far_field,
            settings.max_resets, settings.seed};
}

struct Lanes
{
    // Structure-of-arrays state of up to kLanes walkers.
    double pos[3][kLanes] = {};
    double tgt[3][kLanes] = {};
    double noise[3][kLanes] = {};
    double m[kLanes] = {};
    double s[kLanes] = {};
    double gap[kLanes] = {};
    double new_gap[kLanes] = {};

    // Per-walker bookkeeping.
    std::int64_t replicate[kLanes];
    rng::Stream stream[kLanes] = {
        {0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0},
        {0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double elapsed[kLanes] = {};
    double seg_elapsed[kLanes] = {};
    double seg_horizon[kLanes] = {};
    double home_gap[kLanes] = {};
    double step[kLanes] = {};
    bool seg_end[kLanes] = {};
    std::int64_t resets[kLanes] = {};

    kernels::Axes axes_pos() const { return {pos[0], pos[1], pos[2]}; }
    kernels::Axes axes_tgt() const { return {tgt[0], tgt[1], tgt[2]}; }
};

double gap_from_origin(Problem const& p, Lanes const& L, std::size_t k)
{
    if (p.dim == 1)
        return L.tgt[0][k] - 0.0;
    double sum = 0;
    for (int c = 0; c < p.dim; ++c)
    {
        double const d = 0.0 - L.tgt[c][k];
        sum = sum + d * d;
    }
    return std::sqrt(sum);
}

double new_horizon(Problem const& p, rng::Stream& stream)
{
    return p.mechanism == Mechanism::poisson ? stream.exponential(p.parameter)
                                             : p.parameter;
}

bool on_target(Problem const& p, double gap)
{
    return p.dim == 1 ? gap == 0 : gap <= p.eps0;
}

// Initializes lane k for a replicate. Returns false (and leaves the lane idle)
// if the walker starts on the target.
bool start_lane(Problem const& p, Lanes& L, std::size_t k, std::int64_t rep)
{
    L.replicate[k] = rep;
    L.stream[k] = rng::Stream(p.seed, kPathTag, static_cast<std::uint64_t>(rep));
    rng::Stream& st = L.stream[k];
    for (int c = 0; c < 3; ++c)
    {
        L.pos[c][k] = 0;
        L.tgt[c][k] = 0;
    }
    for (int c = 0; c < p.dim; ++c)
    {
        L.tgt[c][k] = p.target.is_fixed()
                          ? p.target.point()[c]
                          : std::sqrt(p.target.variance()) * st.normal();
    }
    L.home_gap[k] = gap_from_origin(p, L, k);
    L.gap[k] = L.home_gap[k];
    L.elapsed[k] = 0;
    L.seg_elapsed[k] = 0;
    L.resets[k] = 0;
    if (on_target(p, L.gap[k]))
    {
        L.replicate[k] = -1;
        return false;
    }
    L.seg_horizon[k] = new_horizon(p, st);
    return true;
}

void prepare_step(Problem const& p, Lanes& L, std::size_t k)
{
    rng::Stream& st = L.stream[k];
    double h = p.dt;
    if (p.dim >= 2 && p.adaptive)
    {
        double const g = (L.gap[k] - p.eps0) / p.eps0;
        if (g > 1)
            h = p.dt * (g * g);
    }
    double const remaining = L.seg_horizon[k] - L.seg_elapsed[k];
    L.seg_end[k] = h >= remaining;
    if (L.seg_end[k])
        h = remaining;
    L.step[k] = h;

    if (p.mechanism == Mechanism::bridge)
    {
        if (L.seg_end[k])
        {
            L.m[k] = 0;
            L.s[k] = 0;
        }
        else
        {
            L.m[k] = 1.0 - h / remaining;
            L.s[k] = std::sqrt(p.diffusion * h * (remaining - h) / remaining);
        }
    }
    else
    {
        L.m[k] = 1;
        L.s[k] = std::sqrt(p.diffusion * h);
    }
    for (int c = 0; c < p.dim; ++c)
        L.noise[c][k] = st.normal();
}

// Returns the hit time within the step, or a negative value for no hit.
double detect_hit(Problem const& p, Lanes& L, std::size_t k)
{
    double const h = L.step[k];
    double const g0 = L.gap[k];
    double const g1 = L.new_gap[k];
    double d0 = g0;
    double d1 = g1;
    if (p.dim == 1)
    {
        if (g1 == 0 || (g0 > 0) != (g1 > 0))
            return h * g0 / (g0 - g1);
    }
    else
    {
        d0 = g0 - p.eps0;
        d1 = g1 - p.eps0;
        if (d1 <= 0)
            return h * d0 / (d0 - d1);
    }
    double const exponent = 2.0 * d0 * d1 / (p.diffusion * h);
    if (exponent > kNegligibleExponent)
        return -1;
    if (L.stream[k].uniform() < std::exp(-exponent))
        return 0.5 * h;
    return -1;
}

void run_range(Problem const& p, std::int64_t begin, std::int64_t end,
               HitSample* out)
{
    Lanes L;
    std::fill(std::begin(L.replicate), std::end(L.replicate), -1);
    std::int64_t next = begin;
    auto refill = [&](std::size_t k) {
        while (next < end)
        {
            std::int64_t const rep = next++;
            if (start_lane(p, L, k, rep))
                return;
            out[rep - begin] = {0.0, false};
        }
        L.replicate[k] = -1;
    };
    for (std::size_t k = 0; k < kLanes; ++k)
        refill(k);

    auto const pos = L.axes_pos();
    auto const tgt = L.axes_tgt();
    while (std::any_of(std::begin(L.replicate), std::end(L.replicate),
                       [](std::int64_t r) { return r >= 0; }))
    {
        for (std::size_t k = 0; k < kLanes; ++k)
        {
            if (L.replicate[k] >= 0)
            {
                prepare_step(p, L, k);
            }
            else
            {
                L.m[k] = 1;
                L.s[k] = 0;
                for (int c = 0; c < p.dim; ++c)
                    L.noise[c][k] = 0;
            }
        }
        for (int c = 0; c < p.dim; ++c)
            kernels::affine_step(L.pos[c], L.m, L.s, L.noise[c], kLanes);
        kernels::target_gap(p.dim, pos, tgt, L.new_gap, kLanes);

        for (std::size_t k = 0; k < kLanes; ++k)
        {
            std::int64_t const rep = L.replicate[k];
            if (rep < 0)
                continue;
            double const hit = detect_hit(p, L, k);
            if (hit >= 0)
            {
                out[rep - begin] = {L.elapsed[k] + hit, false};
                refill(k);
                continue;
            }
            L.elapsed[k] += L.step[k];
            L.seg_elapsed[k] += L.step[k];
            L.gap[k] = L.new_gap[k];
            if (!L.seg_end[k])
                continue;
            if (++L.resets[k] > p.max_resets)
            {
                out[rep - begin] = {L.elapsed[k], true};
                refill(k);
                continue;
            }
            for (int c = 0; c < p.dim; ++c)
                L.pos[c][k] = 0;
            L.gap[k] = L.home_gap[k];
            L.seg_elapsed[k] = 0;
            L.seg_horizon[k] = new_horizon(p, L.stream[k]);
        }
    }
}

}  // namespace

void SimSettings::validate(SearchSpec const& spec) const
{
    if (!(dt >= 0) || !std::isfinite(dt))
        throw InvalidArgument("time step must be positive (or 0 for default)");
    if (n_replicates < 1)
        throw InvalidArgument("need at least one replicate");
    if (max_resets < 0)
        throw InvalidArgument("reset cap must be nonnegative");
    if (threads < 0)
        throw InvalidArgument("thread count must be nonnegative");
    if (spec.dimension() >= 2 && dt > 0
        && std::sqrt(spec.diffusion() * dt)
               > spec.detection_radius() / 10 * (1 + 1e-12))
        throw InvalidArgument(
            "time step too coarse: need sqrt(D*dt) <= eps0/10 in d >= 2");
}

double default_dt(SearchSpec const& spec, TargetSpec const& target)
{
    double const d = spec.diffusion();
    if (spec.dimension() >= 2)
    {
        double const h = spec.detection_radius() / 10;
        return h * h / d;
    }
    double const scale2 = target.is_gaussian()
                              ? target.variance()
                              : target.point()[0] * target.point()[0];
    // A target at the origin is found at time 0; any step works.
    return scale2 > 0 ? scale2 / (400 * d) : 1.0 / (400 * d);
}

int resolve_threads(int requested)
{
    int n = requested > 0
                ? requested
                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (char const* env = std::getenv("RESET_SEARCH_THREADS"))
    {
        int const cap = std::atoi(env);
        if (cap > 0)
            n = std::min(n, cap);
    }
    return n;
}

HitSample sample_hitting_time(SearchSpec const& spec, TargetSpec const& target,
                              SimSettings const& settings,
                              std::int64_t replicate_index)
{
    Problem const p = make_problem(spec, target, settings);
    if (replicate_index < 0 || replicate_index >= settings.n_replicates)
        throw InvalidArgument("replicate index out of range");
    HitSample out;
    run_range(p, replicate_index, replicate_index + 1, &out);
    return out;
}

std::vector<HitSample> simulate_replicates(SearchSpec const& spec,
                                           TargetSpec const& target,
                                           SimSettings const& settings)
{
    Problem const p = make_problem(spec, target, settings);
    std::int64_t const n = settings.n_replicates;
    std::vector<HitSample> samples(static_cast<std::size_t>(n));
    int const threads = static_cast<int>(
        std::min<std::int64_t>(resolve_threads(settings.threads), n));
    if (threads <= 1)
    {
        run_range(p, 0, n, samples.data());
        return samples;
    }
    std::vector<std::thread> workers;
    for (int w = 0; w < threads; ++w)
    {
        std::int64_t const begin = n * w / threads;
        std::int64_t const end = n * (w + 1) / threads;
        workers.emplace_back(run_range, std::cref(p), begin, end,
                             samples.data() + begin);
    }
    for (auto& w : workers)
        w.join();
    return samples;
}

double pairwise_sum(double const* values, std::size_t n)
{
    if (n <= 8)
    {
        double sum = 0;
        for (std::size_t i = 0; i < n; ++i)
            sum += values[i];
        return sum;
    }
    std::size_t const half = n / 2;
    return pairwise_sum(values, half) + pairwise_sum(values + half, n - half);
}

McEstimate summarize(std::vector<HitSample> const& samples)
{
    if (samples.empty())
        throw InvalidArgument("no samples to summarize");
    std::size_t const n = samples.size();
    std::vector<double> buffer(n);
    std::size_t censored = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        buffer[i] = samples[i].time;
        censored += samples[i].censored;
    }
    McEstimate est;
    est.n = static_cast<std::int64_t>(n);
    est.mean = pairwise_sum(buffer.data(), n) / n;
    for (std::size_t i = 0; i < n; ++i)
        buffer[i] = (samples[i].time - est.mean) * (samples[i].time - est.mean);
    double const var = n > 1 ? pairwise_sum(buffer.data(), n) / (n - 1) : 0;
    est.std_error = std::sqrt(var / n);
    est.censored_fraction = static_cast<double>(censored) / n;
    return est;
}

McEstimate estimate_mean(SearchSpec const& spec, TargetSpec const& target,
                         SimSettings const& settings)
{
    McEstimate const est = summarize(simulate_replicates(spec, target, settings));
    if (est.censored_fraction > 0.05)
        throw ExcessiveCensoring(
            "more than 5% of replicates hit the reset cap ("
                + std::to_string(est.censored_fraction * 100) + "%)",
            est);
    return est;
}

double bridge_increment(double x, double t, double period, double dt,
                        double diffusion, rng::Stream& stream)
{
    if (!(dt > 0) || !(t >= 0) || t + dt > period)
        throw InvalidArgument("bridge step must satisfy 0 <= t < t+dt <= T");
    double const remaining = period - t;
    if (dt >= remaining)
        return 0.0;
    double const mean = x * (1.0 - dt / remaining);
    double const sd = std::sqrt(diffusion * dt * (remaining - dt) / remaining);
    return mean + sd * stream.normal();
}

double crossing_probability(double x0, double x1, double a, double dt,
                            double diffusion)
{
    double const g0 = a - x0;
    double const g1 = a - x1;
    if (g0 * g1 <= 0)
        return 1.0;
    return std::exp(-2.0 * g0 * g1 / (diffusion * dt));
}

bool crossing_correction_1d(double x0, double x1, double a, double dt,
                            double diffusion, rng::Stream& stream)
{
    double const p = crossing_probability(x0, x1, a, dt, diffusion);
    if (p >= 1.0)
        return true;
    return stream.uniform() < p;
}

Frequency estimate_segment_hit_probability(SearchSpec const& spec, double a,
                                           SimSettings const& settings)
{
    if (spec.dimension() != 1 || spec.mechanism() == Mechanism::poisson)
        throw UnsupportedCombination(
            "segment hit frequency needs a 1D periodic or bridge process");
    SimSettings single = settings;
    single.max_resets = 0;
    auto const samples = simulate_replicates(spec, TargetSpec::fixed_at(a), single);
    std::int64_t hits = 0;
    for (auto const& s : samples)
        hits += !s.censored;
    Frequency f;
    f.n = static_cast<std::int64_t>(samples.size());
    f.p = static_cast<double>(hits) / f.n;
    f.std_error = std::sqrt(f.p * (1 - f.p) / f.n);
    return f;
}

}  // namespace rsearch::mc
