#pragma once

// Data-parallel geometry kernels behind a runtime-selected dispatch table.
//
// Every variant must produce bit-identical results to the scalar reference:
// squared distances are formed as dx*dx + dy*dy with separate multiply and
// add (no fused multiply-add) and compared with the same predicate.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace ibds::simd {

enum class Isa { scalar, avx2 };

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// out[j] = 1 iff (xs[j]-p.x)^2 + (ys[j]-p.y)^2 <= radius_sq, else 0.
using WithinRadiusFn = void (*)(std::span<const double> xs, std::span<const double> ys, Point2 p,
                                double radius_sq, std::span<std::uint8_t> out);

/// True iff some candidate w has d2(u,w) < limit_sq and d2(v,w) < limit_sq.
using LuneWitnessFn = bool (*)(std::span<const double> xs, std::span<const double> ys, Point2 u,
                               Point2 v, double limit_sq);

struct KernelTable {
    Isa isa;
    std::string_view name;
    WithinRadiusFn within_radius;
    LuneWitnessFn lune_witness;
};

const KernelTable& scalar_kernels() noexcept;

/// Nullptr when the AVX2 translation unit was not built or the CPU lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

/// Table used by the library. Picks the widest supported ISA on first use;
/// the environment variable IBDS_ISA=scalar forces the reference path.
const KernelTable& active_kernels() noexcept;

/// Overrides the active table. Returns false (and changes nothing) when the
/// requested ISA is unavailable on this machine.
bool select_kernels(Isa isa) noexcept;

/// Squared Euclidean distance, the one formula every kernel agrees on.
inline double distance_sq(Point2 a, Point2 b) noexcept
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

namespace detail {
void within_radius_scalar(std::span<const double> xs, std::span<const double> ys, Point2 p,
                          double radius_sq, std::span<std::uint8_t> out);
bool lune_witness_scalar(std::span<const double> xs, std::span<const double> ys, Point2 u, Point2 v,
                         double limit_sq);
void within_radius_avx2(std::span<const double> xs, std::span<const double> ys, Point2 p,
                        double radius_sq, std::span<std::uint8_t> out);
bool lune_witness_avx2(std::span<const double> xs, std::span<const double> ys, Point2 u, Point2 v,
                       double limit_sq);
} // namespace detail

} // namespace ibds::simd
