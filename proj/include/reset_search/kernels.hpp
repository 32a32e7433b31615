#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace rsearch::kernels {

/// Instruction-set variant of the batched kernels. Every variant produces
/// bit-identical results to `scalar`.
enum class Isa
{
    scalar,
    avx2
};

std::string_view to_string(Isa isa);

/// Whether the running CPU supports the variant.
bool available(Isa isa);

/// Best available variant, unless RESET_SEARCH_SIMD=scalar forces the
/// reference kernels. Resolved once per process.
Isa active();

/// x[i] = x[i]·m[i] + s[i]·z[i] (no fused multiply-add).
void affine_step(double* x, double const* m, double const* s,
                 double const* z, std::size_t n, Isa isa = active());

/// Coordinate arrays of a structure-of-arrays batch; unused axes are ignored.
using Axes = std::array<double const*, 3>;

/// Signed gap a[i] − x[i] for dim = 1, otherwise the Euclidean distance from
/// position i to target i.
void target_gap(int dim, Axes position, Axes target, double* out,
                std::size_t n, Isa isa = active());

/// Dimensionless Gaussian-target bridge expectation at each 𝒯 (dim 1 or 3);
/// +inf where the expectation is divergent.
void bridge_curve(int dim, double const* script_t, double* out, std::size_t n,
                  Isa isa = active());

namespace detail {
void affine_step_scalar(double*, double const*, double const*, double const*,
                        std::size_t);
void target_gap_scalar(int, Axes, Axes, double*, std::size_t);
void bridge_curve_scalar(int, double const*, double*, std::size_t);
void affine_step_avx2(double*, double const*, double const*, double const*,
                      std::size_t);
void target_gap_avx2(int, Axes, Axes, double*, std::size_t);
void bridge_curve_avx2(int, double const*, double*, std::size_t);
}  // namespace detail

}  // namespace rsearch::kernels
