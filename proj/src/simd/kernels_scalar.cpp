#include "ibds/simd/kernels.hpp"

namespace ibds::simd::detail {

void within_radius_scalar(std::span<const double> xs, std::span<const double> ys, Point2 p,
                          double radius_sq, std::span<std::uint8_t> out)
{
    for (std::size_t j = 0; j < xs.size(); ++j)
        out[j] = distance_sq({xs[j], ys[j]}, p) <= radius_sq ? 1 : 0;
}

bool lune_witness_scalar(std::span<const double> xs, std::span<const double> ys, Point2 u, Point2 v,
                         double limit_sq)
{
    for (std::size_t j = 0; j < xs.size(); ++j) {
        const Point2 w{xs[j], ys[j]};
        if (distance_sq(u, w) < limit_sq && distance_sq(v, w) < limit_sq)
            return true;
    }
    return false;
}

} // namespace ibds::simd::detail
