// Compiled with -mavx2 only; reached through avx2_kernels() after a CPU check.

#include <immintrin.h>

#include "reference.hpp"

namespace cspace::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

// Mirrors std::clamp(v, lo, hi): (v < lo) ? lo : (hi < v) ? hi : v.
inline __m256d clamp(__m256d v, __m256d lo, __m256d hi) {
    v = _mm256_blendv_pd(v, lo, _mm256_cmp_pd(v, lo, _CMP_LT_OQ));
    return _mm256_blendv_pd(v, hi, _mm256_cmp_pd(hi, v, _CMP_LT_OQ));
}

void normalise(ColumnsView raw, const Normalisation& norm, MutableColumnsView out) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    for (int d = 0; d < kDims; ++d) {
        const __m256d scale = _mm256_set1_pd(norm.scale[d]);
        const __m256d offset = _mm256_set1_pd(norm.offset[d]);
        std::size_t i = 0;
        for (; i + kLanes <= raw.rows; i += kLanes) {
            __m256d v = _mm256_div_pd(_mm256_loadu_pd(raw.column[d] + i), scale);
            v = _mm256_add_pd(v, offset);
            _mm256_storeu_pd(out.column[d] + i, clamp(v, zero, one));
        }
        for (; i < raw.rows; ++i) {
            out.column[d][i] = reference::normalise_one(raw.column[d][i], norm.scale[d], norm.offset[d]);
        }
    }
}

void moving_average(ColumnsView in, int window, MutableColumnsView out) {
    const std::size_t half = static_cast<std::size_t>(window / 2);
    const std::size_t rows = in.rows;
    const __m256d count = _mm256_set1_pd(static_cast<double>(2 * half + 1));
    for (int d = 0; d < kDims; ++d) {
        const double* col = in.column[d];
        double* dst = out.column[d];
        // Rows whose full window lies inside the column: [half, rows - half).
        std::size_t first = std::min(half, rows);
        std::size_t last = rows > half ? rows - half : 0;
        for (std::size_t i = 0; i < first; ++i) dst[i] = reference::moving_average_row(col, rows, i, int(half));
        std::size_t i = first;
        for (; i + kLanes <= last; i += kLanes) {
            __m256d sum = _mm256_setzero_pd();
            for (std::size_t j = i - half; j <= i + half; ++j) sum = _mm256_add_pd(sum, _mm256_loadu_pd(col + j));
            _mm256_storeu_pd(dst + i, _mm256_div_pd(sum, count));
        }
        for (; i < rows; ++i) dst[i] = reference::moving_average_row(col, rows, i, int(half));
    }
}

void scaled_distance(ColumnsView in, const BoxQuery& box, double* out) {
    const int declared = box.declared_count();
    if (declared == 0) {
        for (std::size_t i = 0; i < in.rows; ++i) out[i] = 0.0;
        return;
    }
    const __m256d n = _mm256_set1_pd(static_cast<double>(declared));
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
    std::size_t i = 0;
    for (; i + kLanes <= in.rows; i += kLanes) {
        __m256d acc = _mm256_setzero_pd();
        for (int d = 0; d < kDims; ++d) {
            if (!box.declared(d)) continue;
            const __m256d x = _mm256_loadu_pd(in.column[d] + i);
            const __m256d c = _mm256_set1_pd(box.centre[d]);
            const __m256d diff = _mm256_sub_pd(x, c);
            __m256d t;
            if (box.halfwidth[d] > 0.0) {
                t = _mm256_div_pd(diff, _mm256_set1_pd(box.halfwidth[d]));
            } else {
                t = _mm256_add_pd(one, _mm256_and_pd(diff, abs_mask));
                t = _mm256_blendv_pd(t, zero, _mm256_cmp_pd(x, c, _CMP_EQ_OQ));
            }
            acc = _mm256_add_pd(acc, _mm256_mul_pd(t, t));
        }
        _mm256_storeu_pd(out + i, _mm256_sqrt_pd(_mm256_div_pd(acc, n)));
    }
    for (; i < in.rows; ++i) out[i] = reference::scaled_distance_row(in, i, box, declared);
}

void membership(ColumnsView in, const BoxQuery& box, std::uint8_t* out) {
    std::size_t i = 0;
    for (; i + kLanes <= in.rows; i += kLanes) {
        __m256d all = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
        for (int d = 0; d < kDims; ++d) {
            if (!box.declared(d)) continue;
            const __m256d x = _mm256_loadu_pd(in.column[d] + i);
            all = _mm256_and_pd(all, _mm256_cmp_pd(x, _mm256_set1_pd(box.lo[d]), _CMP_GE_OQ));
            all = _mm256_and_pd(all, _mm256_cmp_pd(x, _mm256_set1_pd(box.hi[d]), _CMP_LE_OQ));
        }
        int bits = _mm256_movemask_pd(all);
        for (std::size_t k = 0; k < kLanes; ++k) out[i + k] = static_cast<std::uint8_t>((bits >> k) & 1);
    }
    for (; i < in.rows; ++i) out[i] = reference::member_row(in, i, box);
}

}  // namespace

const KernelTable& table() noexcept {
    static const KernelTable t{"avx2", normalise, moving_average, scaled_distance, membership};
    return t;
}

}  // namespace cspace::kernels::avx2
