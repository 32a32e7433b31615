#pragma once

#include <cstdint>
#include <vector>

#include "reset_search/model.hpp"
#include "reset_search/rng.hpp"

namespace rsearch::mc {

struct SimSettings
{
    //! Base time step; 0 selects default_dt().
    double dt = 0;
    std::int64_t n_replicates = 10'000;
    std::int64_t max_resets = 100'000;
    std::uint64_t seed = 1;
    //! Worker threads; 0 uses the hardware count capped by
    //! RESET_SEARCH_THREADS.
    int threads = 0;
    //! In d ≥ 2, grow the step as dt·(gap/ε₀)² away from the detection ball.
    bool adaptive_far_field = true;

    //! Checks the fields against `spec`; in d ≥ 2 requires
    //! √(D·dt) ≤ ε₀/10.
    void validate(SearchSpec const& spec) const;
};

/// a²/(400 D) in d = 1 (with a the target distance or σ for Gaussian
/// targets), (ε₀/10)²/D otherwise.
double default_dt(SearchSpec const& spec, TargetSpec const& target);

/// Number of worker threads used for `requested` (0 = automatic).
int resolve_threads(int requested);

struct HitSample
{
    double time = 0;
    bool censored = false;
};

/// One draw of the hitting time of the replicate `replicate_index`.
/// Gaussian targets draw a fresh target location per replicate.
HitSample sample_hitting_time(SearchSpec const& spec, TargetSpec const& target,
                              SimSettings const& settings,
                              std::int64_t replicate_index);

/// All replicates in replicate order; identical for any thread count.
std::vector<HitSample> simulate_replicates(SearchSpec const& spec,
                                           TargetSpec const& target,
                                           SimSettings const& settings);

/// Mean search time with standard error. Throws ExcessiveCensoring when more
/// than 5% of replicates were censored.
McEstimate estimate_mean(SearchSpec const& spec, TargetSpec const& target,
                         SimSettings const& settings);

/// Summary of a sample whose censored entries count at their censoring time.
McEstimate summarize(std::vector<HitSample> const& samples);

/// Sum of `values` by recursive halving (order-fixed, low rounding growth).
double pairwise_sum(double const* values, std::size_t n);

/// Position after one exact bridge transition of length dt, starting from x
/// at elapsed time t in a bridge of length T pinned at 0.
double bridge_increment(double x, double t, double period, double dt,
                        double diffusion, rng::Stream& stream);

/// Probability that a Brownian path from x0 to x1 over dt touches level a
/// (both endpoints on the same side): exp(−2(a−x0)(a−x1)/(D·dt)).
double crossing_probability(double x0, double x1, double a, double dt,
                            double diffusion);

/// Bernoulli draw of the crossing event; certain when the endpoints straddle
/// or touch a.
bool crossing_correction_1d(double x0, double x1, double a, double dt,
                            double diffusion, rng::Stream& stream);

struct Frequency
{
    double p = 0;
    double std_error = 0;
    std::int64_t n = 0;
};

/// Fraction of single reset periods (bridge or free motion of length T) that
/// reach level a in d = 1.
Frequency estimate_segment_hit_probability(SearchSpec const& spec, double a,
                                           SimSettings const& settings);

}  // namespace rsearch::mc
