#include <atomic>
#include <cstdlib>
#include <cstring>

#include "ibds/simd/kernels.hpp"

namespace ibds::simd {

namespace {

constexpr KernelTable kScalar{Isa::scalar, "scalar", &detail::within_radius_scalar,
                              &detail::lune_witness_scalar};

#if defined(IBDS_HAVE_AVX2_TU)
constexpr KernelTable kAvx2{Isa::avx2, "avx2", &detail::within_radius_avx2,
                            &detail::lune_witness_avx2};

bool cpu_has_avx2() noexcept
{
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
}
#endif

const KernelTable* pick_default() noexcept
{
    if (const char* env = std::getenv("IBDS_ISA"); env && std::strcmp(env, "scalar") == 0)
        return &kScalar;
    if (const KernelTable* t = avx2_kernels())
        return t;
    return &kScalar;
}

std::atomic<const KernelTable*>& active_slot() noexcept
{
    static std::atomic<const KernelTable*> slot{pick_default()};
    return slot;
}

} // namespace

const KernelTable& scalar_kernels() noexcept
{
    return kScalar;
}

const KernelTable* avx2_kernels() noexcept
{
#if defined(IBDS_HAVE_AVX2_TU)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept
{
    return *active_slot().load(std::memory_order_acquire);
}

bool select_kernels(Isa isa) noexcept
{
    const KernelTable* t = isa == Isa::scalar ? &kScalar : avx2_kernels();
    if (!t)
        return false;
    active_slot().store(t, std::memory_order_release);
    return true;
}

} // namespace ibds::simd
