#include <cstdlib>
#include <string>

#include "reset_search/kernels.hpp"
#include "reset_search/model.hpp"

namespace rsearch::kernels {

std::string_view to_string(Isa isa)
{
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

bool available(Isa isa)
{
    switch (isa)
    {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Isa active()
{
    static Isa const isa = [] {
        char const* env = std::getenv("RESET_SEARCH_SIMD");
        if (env && std::string(env) == "scalar")
            return Isa::scalar;
        return available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
    }();
    return isa;
}

namespace {

void require(Isa isa)
{
    if (!available(isa))
        throw InvalidArgument("kernel variant " + std::string(to_string(isa))
                              + " is not supported on this CPU");
}

}  // namespace

void affine_step(double* x, double const* m, double const* s,
                 double const* z, std::size_t n, Isa isa)
{
    require(isa);
    if (isa == Isa::avx2)
        detail::affine_step_avx2(x, m, s, z, n);
    else
        detail::affine_step_scalar(x, m, s, z, n);
}

void target_gap(int dim, Axes position, Axes target, double* out,
                std::size_t n, Isa isa)
{
    require(isa);
    if (dim < 1 || dim > 3)
        throw InvalidArgument("dimension must be 1, 2 or 3");
    if (isa == Isa::avx2)
        detail::target_gap_avx2(dim, position, target, out, n);
    else
        detail::target_gap_scalar(dim, position, target, out, n);
}

void bridge_curve(int dim, double const* script_t, double* out, std::size_t n,
                  Isa isa)
{
    require(isa);
    if (dim != 1 && dim != 3)
        throw UnsupportedCombination("bridge curve exists for dimensions 1 and 3");
    if (isa == Isa::avx2)
        detail::bridge_curve_avx2(dim, script_t, out, n);
    else
        detail::bridge_curve_scalar(dim, script_t, out, n);
}

}  // namespace rsearch::kernels
