// AVX2 paths are enabled per function through target attributes so that no
// inline code shared with other translation units is built with VEX encoding.
// Callers must check CPU support first (see dispatch.cpp).

#include <immintrin.h>

#include "ibds/simd/kernels.hpp"

namespace ibds::simd::detail {

namespace {

__attribute__((target("avx2"))) inline __m256d dist_sq4(__m256d x, __m256d y, __m256d px, __m256d py)
{
    const __m256d dx = _mm256_sub_pd(x, px);
    const __m256d dy = _mm256_sub_pd(y, py);
    // mul then add, matching the scalar rounding sequence.
    return _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
}

} // namespace

__attribute__((target("avx2"))) void within_radius_avx2(std::span<const double> xs, std::span<const double> ys, Point2 p,
                        double radius_sq, std::span<std::uint8_t> out)
{
    const std::size_t n = xs.size();
    const __m256d px = _mm256_set1_pd(p.x);
    const __m256d py = _mm256_set1_pd(p.y);
    const __m256d r2 = _mm256_set1_pd(radius_sq);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d d2 = dist_sq4(_mm256_loadu_pd(xs.data() + j), _mm256_loadu_pd(ys.data() + j), px, py);
        const int bits = _mm256_movemask_pd(_mm256_cmp_pd(d2, r2, _CMP_LE_OQ));
        out[j + 0] = static_cast<std::uint8_t>(bits & 1);
        out[j + 1] = static_cast<std::uint8_t>((bits >> 1) & 1);
        out[j + 2] = static_cast<std::uint8_t>((bits >> 2) & 1);
        out[j + 3] = static_cast<std::uint8_t>((bits >> 3) & 1);
    }
    within_radius_scalar(xs.subspan(j), ys.subspan(j), p, radius_sq, out.subspan(j));
}

__attribute__((target("avx2"))) bool lune_witness_avx2(std::span<const double> xs, std::span<const double> ys, Point2 u, Point2 v,
                       double limit_sq)
{
    const std::size_t n = xs.size();
    const __m256d ux = _mm256_set1_pd(u.x);
    const __m256d uy = _mm256_set1_pd(u.y);
    const __m256d vx = _mm256_set1_pd(v.x);
    const __m256d vy = _mm256_set1_pd(v.y);
    const __m256d lim = _mm256_set1_pd(limit_sq);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d x = _mm256_loadu_pd(xs.data() + j);
        const __m256d y = _mm256_loadu_pd(ys.data() + j);
        const __m256d near_u = _mm256_cmp_pd(dist_sq4(x, y, ux, uy), lim, _CMP_LT_OQ);
        const __m256d near_v = _mm256_cmp_pd(dist_sq4(x, y, vx, vy), lim, _CMP_LT_OQ);
        if (_mm256_movemask_pd(_mm256_and_pd(near_u, near_v)) != 0)
            return true;
    }
    return lune_witness_scalar(xs.subspan(j), ys.subspan(j), u, v, limit_sq);
}

} // namespace ibds::simd::detail
