#include "tsplab/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace tsplab::kernels::avx2 {

void euclidean_row(std::span<const double> xs, std::span<const double> ys, std::size_t i,
                   std::span<double> out) noexcept {
    const std::size_t n = out.size();
    const __m256d xi = _mm256_set1_pd(xs[i]);
    const __m256d yi = _mm256_set1_pd(ys[i]);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(xs.data() + j));
        const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(ys.data() + j));
        const __m256d sq = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        _mm256_storeu_pd(out.data() + j, _mm256_sqrt_pd(sq));
    }
    for (; j < n; ++j) {
        const double dx = xs[i] - xs[j];
        const double dy = ys[i] - ys[j];
        out[j] = std::sqrt(dx * dx + dy * dy);
    }
}

std::size_t nearest_unmasked(std::span<const double> values,
                             std::span<const std::uint8_t> mask) noexcept {
    const std::size_t n = values.size();
    const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d best = inf;
    __m256i best_idx = _mm256_set1_epi64x(-1);
    __m256i idx = _mm256_setr_epi64x(0, 1, 2, 3);
    const __m256i four = _mm256_set1_epi64x(4);
    const __m256i zero = _mm256_setzero_si256();

    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        std::int32_t packed;
        __builtin_memcpy(&packed, mask.data() + j, sizeof packed);
        const __m256i m64 = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
        const __m256d open = _mm256_castsi256_pd(_mm256_cmpeq_epi64(m64, zero));
        const __m256d v = _mm256_loadu_pd(values.data() + j);
        // Strictly-less keeps the first index seen in each lane. An unmasked
        // +inf entry is still a valid answer, so lanes with no index yet take
        // any open entry.
        const __m256d unset = _mm256_castsi256_pd(_mm256_cmpeq_epi64(best_idx, _mm256_set1_epi64x(-1)));
        const __m256d less = _mm256_cmp_pd(v, best, _CMP_LT_OQ);
        const __m256d take = _mm256_and_pd(open, _mm256_or_pd(less, unset));
        best = _mm256_blendv_pd(best, v, take);
        best_idx = _mm256_castpd_si256(
            _mm256_blendv_pd(_mm256_castsi256_pd(best_idx), _mm256_castsi256_pd(idx), take));
        idx = _mm256_add_epi64(idx, four);
    }

    alignas(32) double lane_value[4];
    alignas(32) std::int64_t lane_index[4];
    _mm256_store_pd(lane_value, best);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane_index), best_idx);

    std::size_t result = n;
    double result_value = 0.0;
    auto consider = [&](std::size_t k, double v) {
        if (result == n || v < result_value || (v == result_value && k < result)) {
            result = k;
            result_value = v;
        }
    };
    for (int lane = 0; lane < 4; ++lane) {
        if (lane_index[lane] >= 0) consider(static_cast<std::size_t>(lane_index[lane]), lane_value[lane]);
    }
    for (; j < n; ++j) {
        if (mask[j] == 0) consider(j, values[j]);
    }
    return result;
}

double closed_path_length(std::span<const std::int32_t> order, std::size_t start, int step,
                          const double* matrix, std::size_t n) noexcept {
    const std::size_t m = order.size();
    if (m < 2) return 0.0;
    const std::size_t advance = step >= 0 ? 1 : m - 1;
    const auto stride = static_cast<long long>(n);

    __m256d acc = _mm256_setzero_pd();
    std::size_t pos = start;
    std::size_t k = 0;
    for (; k + 4 <= m; k += 4) {
        long long flat[4];
        for (int lane = 0; lane < 4; ++lane) {
            const std::size_t next = (pos + advance) % m;
            flat[lane] = order[pos] * stride + order[next];
            pos = next;
        }
        const __m256i offsets = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(flat));
        acc = _mm256_add_pd(acc, _mm256_i64gather_pd(matrix, offsets, 8));
    }

    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; k < m; ++k) {
        const std::size_t next = (pos + advance) % m;
        total += matrix[static_cast<std::size_t>(order[pos]) * n + static_cast<std::size_t>(order[next])];
        pos = next;
    }
    return total;
}

}  // namespace tsplab::kernels::avx2
