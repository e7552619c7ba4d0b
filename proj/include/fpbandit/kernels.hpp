#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fpbandit::kernels {

/// Consistency scan of the episode step: for each parameter theta, decide
/// whether every candidate arm's empirical mean lies within its confidence
/// radius of that parameter's mean.
///
/// `means` is arm-major: means[j * n_params + th] is the mean of candidate
/// slot j under parameter th. Writes out[th] = 1 iff
///   |muhat[j] - means[j * n_params + th]| <= radius[j]   for all j.
///
/// The scalar and SIMD variants use only exact IEEE operations (abs-diff and
/// compare), so their outputs are bit-identical.
using ConsistencyFn = void (*)(const double* means, std::size_t n_slots,
                               std::size_t n_params, const double* muhat,
                               const double* radius, std::uint8_t* out);

void consistent_mask_scalar(const double* means, std::size_t n_slots,
                            std::size_t n_params, const double* muhat,
                            const double* radius, std::uint8_t* out);

#if defined(__x86_64__) || defined(_M_X64)
void consistent_mask_avx2(const double* means, std::size_t n_slots,
                          std::size_t n_params, const double* muhat,
                          const double* radius, std::uint8_t* out);
#endif

#if defined(__aarch64__)
void consistent_mask_neon(const double* means, std::size_t n_slots,
                          std::size_t n_params, const double* muhat,
                          const double* radius, std::uint8_t* out);
#endif

/// Picks the widest variant the running CPU supports. FPBANDIT_SIMD=scalar
/// (or avx2/neon/auto) overrides the choice; unknown or unsupported values
/// fall back to auto.
ConsistencyFn select_consistency_kernel();

/// Name of the kernel select_consistency_kernel() would return.
std::string_view active_kernel_name();

} // namespace fpbandit::kernels
