// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "pmiso/kernels.hpp"

namespace pmiso::kernels {
namespace {

// Four lanes at a time, each in a 64-bit slot. The quotient of factor * src
// by p is estimated in double precision (off by at most one either way) and
// the remainder is fixed up exactly in 64-bit integers.
void mod_submul_avx2(std::uint32_t* dst, const std::uint32_t* src, std::size_t len,
                     std::uint32_t factor, std::uint32_t p) {
  const __m256i vf = _mm256_set1_epi64x(factor);
  const __m256i vp = _mm256_set1_epi64x(p);
  const __m256i vpm1 = _mm256_set1_epi64x(static_cast<std::int64_t>(p) - 1);
  const __m256i zero = _mm256_setzero_si256();
  const __m256d fd = _mm256_set1_pd(static_cast<double>(factor));
  const __m256d inv_p = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256i pack = _mm256_setr_epi32(0, 2, 4, 6, 0, 2, 4, 6);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m128i s32 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
    __m128i d32 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i));
    __m256i s = _mm256_cvtepu32_epi64(s32);
    __m256i d = _mm256_cvtepu32_epi64(d32);
    __m256i prod = _mm256_mul_epu32(s, vf);
    __m256d q_est = _mm256_floor_pd(_mm256_mul_pd(_mm256_mul_pd(_mm256_cvtepi32_pd(s32), fd), inv_p));
    __m256i q = _mm256_cvtepu32_epi64(_mm256_cvttpd_epi32(q_est));
    __m256i r = _mm256_sub_epi64(prod, _mm256_mul_epu32(q, vp));
    // r in [-p, 2p): bring into [0, p).
    r = _mm256_add_epi64(r, _mm256_and_si256(_mm256_cmpgt_epi64(zero, r), vp));
    r = _mm256_sub_epi64(r, _mm256_and_si256(_mm256_cmpgt_epi64(r, vpm1), vp));
    __m256i out = _mm256_sub_epi64(d, r);
    out = _mm256_add_epi64(out, _mm256_and_si256(_mm256_cmpgt_epi64(zero, out), vp));
    __m256i packed = _mm256_permutevar8x32_epi32(out, pack);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), _mm256_castsi256_si128(packed));
  }
  for (; i < len; ++i) {
    std::uint64_t r = static_cast<std::uint64_t>(factor) * src[i] % p;
    std::uint64_t d = dst[i];
    dst[i] = static_cast<std::uint32_t>(d >= r ? d - r : d + p - r);
  }
}

void dot_rows_avx2(const std::int32_t* rows, std::size_t num_rows, std::size_t len,
                   const std::uint32_t* w, std::int64_t* out) {
  for (std::size_t r = 0; r < num_rows; ++r) {
    const std::int32_t* row = rows + r * len;
    __m256i acc = _mm256_setzero_si256();
    std::size_t j = 0;
    for (; j + 4 <= len; j += 4) {
      __m256i y = _mm256_cvtepi32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(row + j)));
      __m256i x = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(w + j)));
      acc = _mm256_add_epi64(acc, _mm256_mul_epi32(y, x));
    }
    alignas(32) std::int64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::int64_t sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; j < len; ++j) sum += static_cast<std::int64_t>(row[j]) * w[j];
    out[r] = sum;
  }
}

}  // namespace

const KernelTable& avx2_table_unchecked() {
  static const KernelTable table{Variant::kAvx2, "avx2", &mod_submul_avx2, &dot_rows_avx2};
  return table;
}

}  // namespace pmiso::kernels
