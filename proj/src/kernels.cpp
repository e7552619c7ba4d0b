#include "fpbandit/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#endif
#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace fpbandit::kernels {

void consistent_mask_scalar(const double* means, std::size_t n_slots,
                            std::size_t n_params, const double* muhat,
                            const double* radius, std::uint8_t* out) {
    std::memset(out, 1, n_params);
    for (std::size_t j = 0; j < n_slots; ++j) {
        const double* row = means + j * n_params;
        const double m = muhat[j];
        const double r = radius[j];
        for (std::size_t th = 0; th < n_params; ++th)
            out[th] &= static_cast<std::uint8_t>(std::abs(m - row[th]) <= r);
    }
}

#if defined(__x86_64__) || defined(_M_X64)

__attribute__((target("avx2")))
void consistent_mask_avx2(const double* means, std::size_t n_slots,
                          std::size_t n_params, const double* muhat,
                          const double* radius, std::uint8_t* out) {
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(
        static_cast<long long>(0x7FFFFFFFFFFFFFFFULL)));
    const std::size_t tail = n_params % 4;
    const std::size_t bulk = n_params - tail;

    std::memset(out, 1, n_params);
    for (std::size_t j = 0; j < n_slots; ++j) {
        const double* row = means + j * n_params;
        const __m256d m = _mm256_set1_pd(muhat[j]);
        const __m256d r = _mm256_set1_pd(radius[j]);
        for (std::size_t th = 0; th < bulk; th += 4) {
            const __m256d diff =
                _mm256_and_pd(_mm256_sub_pd(m, _mm256_loadu_pd(row + th)),
                              abs_mask);
            const int bits =
                _mm256_movemask_pd(_mm256_cmp_pd(diff, r, _CMP_LE_OQ));
            out[th + 0] &= static_cast<std::uint8_t>(bits & 1);
            out[th + 1] &= static_cast<std::uint8_t>((bits >> 1) & 1);
            out[th + 2] &= static_cast<std::uint8_t>((bits >> 2) & 1);
            out[th + 3] &= static_cast<std::uint8_t>((bits >> 3) & 1);
        }
        const double ms = muhat[j];
        const double rs = radius[j];
        for (std::size_t th = bulk; th < n_params; ++th)
            out[th] &= static_cast<std::uint8_t>(std::abs(ms - row[th]) <= rs);
    }
}

#endif // x86_64

#if defined(__aarch64__)

void consistent_mask_neon(const double* means, std::size_t n_slots,
                          std::size_t n_params, const double* muhat,
                          const double* radius, std::uint8_t* out) {
    const std::size_t tail = n_params % 2;
    const std::size_t bulk = n_params - tail;

    std::memset(out, 1, n_params);
    for (std::size_t j = 0; j < n_slots; ++j) {
        const double* row = means + j * n_params;
        const float64x2_t m = vdupq_n_f64(muhat[j]);
        const float64x2_t r = vdupq_n_f64(radius[j]);
        for (std::size_t th = 0; th < bulk; th += 2) {
            const float64x2_t diff = vabdq_f64(m, vld1q_f64(row + th));
            const uint64x2_t le = vcleq_f64(diff, r);
            out[th + 0] &= static_cast<std::uint8_t>(vgetq_lane_u64(le, 0) & 1);
            out[th + 1] &= static_cast<std::uint8_t>(vgetq_lane_u64(le, 1) & 1);
        }
        if (tail)
            out[bulk] &= static_cast<std::uint8_t>(
                std::abs(muhat[j] - row[bulk]) <= radius[j]);
    }
}

#endif // aarch64

namespace {

struct KernelChoice {
    ConsistencyFn fn;
    std::string_view name;
};

KernelChoice choose() {
    const char* forced = std::getenv("FPBANDIT_SIMD");
    const std::string_view req = forced ? forced : "auto";
    if (req == "scalar") return {consistent_mask_scalar, "scalar"};
#if defined(__x86_64__) || defined(_M_X64)
    if ((req == "auto" || req == "avx2") && __builtin_cpu_supports("avx2"))
        return {consistent_mask_avx2, "avx2"};
#endif
#if defined(__aarch64__)
    if (req == "auto" || req == "neon")
        return {consistent_mask_neon, "neon"};
#endif
    return {consistent_mask_scalar, "scalar"};
}

} // namespace

ConsistencyFn select_consistency_kernel() { return choose().fn; }

std::string_view active_kernel_name() { return choose().name; }

} // namespace fpbandit::kernels
